#pragma once

#include <optional>

namespace foamlb {

inline constexpr double kGasConstant = 8.314;  ///< J/(mol K)

enum class AluminiumPhase { melt, solid };

/// Hydrogen solubility C = prefactor exp(-T_a / T) sqrt(p), cm^3/g with p in bar.
struct SolubilityModel {
  double prefactor;
  double activation_temperature;

  static constexpr SolubilityModel for_phase(AluminiumPhase phase) {
    return phase == AluminiumPhase::melt ? SolubilityModel{5.84, 6357.0} : SolubilityModel{0.25, 5941.0};
  }
};

/// Throws std::invalid_argument for T <= 0 or p < 0.
double solubility(double temperature, double pressure_bar, AluminiumPhase phase);

enum class DiffusionBranch { low, high };

/// D = D0 exp(-H / (R T)).
struct DiffusionModel {
  double D0;  ///< m^2/s
  double H;   ///< J/mol

  static constexpr DiffusionModel for_branch(DiffusionBranch b) {
    return b == DiffusionBranch::low ? DiffusionModel{3.8e-6, 19260.0} : DiffusionModel{1.1e-5, 40950.0};
  }
};

/// m^2/s. Throws std::invalid_argument for T <= 0.
double diffusion_coefficient(double temperature, DiffusionBranch branch = DiffusionBranch::low);

/// sqrt(4 D t), m. Throws std::invalid_argument for negative input.
double diffusion_length(double D, double t);

/// Time at which the diffusion length reaches `length`, length^2 / (4 D).
double diffusion_time(double D, double length);

/// Liquid around a spherical bubble.
struct RayleighMaterial {
  double rho = 2700.0;   ///< kg/m^3
  double nu = 4.07e-7;   ///< m^2/s
  double sigma = 0.87;   ///< N/m
  double p0 = 101325.0;  ///< far-field pressure, Pa
};

struct RayleighState {
  double R = 0.0;     ///< m
  double Rdot = 0.0;  ///< m/s
  double t = 0.0;     ///< s
};

inline constexpr double kRayleighMinRadius = 1e-9;

/// R'' from rho R R'' + 3/2 rho R'^2 + 4 rho nu R'/R + 2 sigma/R = p_i - p0.
double rayleigh_acceleration(const RayleighState& s, const RayleighMaterial& m, double p_i);

/// One classical RK4 step of size dt with constant p_i.
RayleighState rayleigh_rk4(const RayleighState& s, const RayleighMaterial& m, double p_i, double dt);

/// Advances by dt with step-doubling error control on R (relative tolerance `tol`).
/// Throws SingularityError when the radius would fall below kRayleighMinRadius,
/// std::invalid_argument for R <= 0 or dt <= 0.
RayleighState rayleigh_step(const RayleighState& s, const RayleighMaterial& m, double p_i, double dt,
                            double tol = 1e-10);

/// Thin-film stability inputs. f and the curvature of V(h) have no defaults.
struct FilmStabilityParams {
  double gamma;   ///< surface energy, N/m
  double A_H;     ///< Hamaker-type constant, J
  double R_f;     ///< film radius, m
  double eta;     ///< viscosity, Pa s
  double f;       ///< dimensionless factor
  double d2V_dh2; ///< curvature of the interface free energy at the film thickness, J/m^4
};

struct FilmCriticals {
  std::optional<double> lambda_c;  ///< empty when d2V/dh2 >= 0 (no instability)
  double h_c = 0.0;
  double tau = 0.0;
};

double critical_wavelength_sq(double gamma, double d2V_dh2);
double critical_thickness(double A_H, double R_f, double f, double gamma);
double rupture_time(double gamma, double eta, double h, double A_H);

/// lambda_c = sqrt(-2 pi^2 gamma / V''), h_c = 0.22 (A_H R_f^2 / (f gamma))^(1/4),
/// tau = 96 pi^2 gamma eta h_c^5 / A_H^2. Throws std::invalid_argument for non-positive inputs.
FilmCriticals film_criticals(const FilmStabilityParams& p);

}  // namespace foamlb
