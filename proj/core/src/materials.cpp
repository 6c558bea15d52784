#include "foamlb/materials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "foamlb/types.hpp"

namespace foamlb {

double solubility(double temperature, double pressure_bar, AluminiumPhase phase) {
  if (!(temperature > 0.0)) throw std::invalid_argument("solubility: temperature must be positive");
  if (pressure_bar < 0.0) throw std::invalid_argument("solubility: negative pressure");
  const SolubilityModel m = SolubilityModel::for_phase(phase);
  return m.prefactor * std::exp(-m.activation_temperature / temperature) * std::sqrt(pressure_bar);
}

double diffusion_coefficient(double temperature, DiffusionBranch branch) {
  if (!(temperature > 0.0)) throw std::invalid_argument("diffusion_coefficient: temperature must be positive");
  const DiffusionModel m = DiffusionModel::for_branch(branch);
  return m.D0 * std::exp(-m.H / (kGasConstant * temperature));
}

double diffusion_length(double D, double t) {
  if (D < 0.0 || t < 0.0) throw std::invalid_argument("diffusion_length: negative input");
  return std::sqrt(4.0 * D * t);
}

double diffusion_time(double D, double length) {
  if (!(D > 0.0) || length < 0.0) throw std::invalid_argument("diffusion_time: invalid input");
  return length * length / (4.0 * D);
}

double rayleigh_acceleration(const RayleighState& s, const RayleighMaterial& m, double p_i) {
  const double R = s.R;
  const double v = s.Rdot;
  const double rhs = (p_i - m.p0) - 2.0 * m.sigma / R - 1.5 * m.rho * v * v - 4.0 * m.rho * m.nu * v / R;
  return rhs / (m.rho * R);
}

RayleighState rayleigh_rk4(const RayleighState& s, const RayleighMaterial& m, double p_i, double dt) {
  auto deriv = [&](double R, double v) { return rayleigh_acceleration({R, v, 0.0}, m, p_i); };
  const double k1r = s.Rdot;
  const double k1v = deriv(s.R, s.Rdot);
  const double k2r = s.Rdot + 0.5 * dt * k1v;
  const double k2v = deriv(s.R + 0.5 * dt * k1r, k2r);
  const double k3r = s.Rdot + 0.5 * dt * k2v;
  const double k3v = deriv(s.R + 0.5 * dt * k2r, k3r);
  const double k4r = s.Rdot + dt * k3v;
  const double k4v = deriv(s.R + dt * k3r, k4r);
  return {s.R + dt / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r), s.Rdot + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
          s.t + dt};
}

RayleighState rayleigh_step(const RayleighState& s, const RayleighMaterial& m, double p_i, double dt, double tol) {
  if (!(s.R > 0.0)) throw std::invalid_argument("rayleigh_step: radius must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("rayleigh_step: dt must be positive");

  RayleighState cur = s;
  const double end = s.t + dt;
  double h = dt;
  const double h_min = dt * 1e-12;
  auto valid = [](const RayleighState& r) {
    return std::isfinite(r.R) && std::isfinite(r.Rdot) && r.R >= kRayleighMinRadius;
  };

  for (int iter = 0; iter < 1000000 && cur.t < end; ++iter) {
    h = std::min(h, end - cur.t);
    const RayleighState full = rayleigh_rk4(cur, m, p_i, h);
    const RayleighState half = rayleigh_rk4(rayleigh_rk4(cur, m, p_i, 0.5 * h), m, p_i, 0.5 * h);
    const bool ok = valid(full) && valid(half);
    const double err = ok ? std::abs(half.R - full.R) / std::max(std::abs(half.R), kRayleighMinRadius) : INFINITY;
    if (ok && err <= tol) {
      cur = half;
      if (end - cur.t <= 1e-15 * std::max(1.0, std::abs(end))) cur.t = end;
      const double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
      h *= std::clamp(grow, 1.0, 4.0);
    } else {
      h *= ok ? std::clamp(0.9 * std::pow(tol / err, 0.2), 0.1, 0.5) : 0.5;
      if (h < h_min) {
        throw SingularityError("rayleigh_step: bubble collapses below the minimum radius at t = " +
                               std::to_string(cur.t));
      }
    }
  }
  if (cur.t < end) throw SolverError("rayleigh_step: step budget exhausted");
  cur.t = end;
  return cur;
}

double critical_wavelength_sq(double gamma, double d2V_dh2) {
  return -2.0 * std::numbers::pi * std::numbers::pi * gamma / d2V_dh2;
}

double critical_thickness(double A_H, double R_f, double f, double gamma) {
  if (!(A_H > 0.0) || !(R_f > 0.0) || !(f > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("critical_thickness: inputs must be positive");
  }
  return 0.22 * std::pow(A_H * R_f * R_f / (f * gamma), 0.25);
}

double rupture_time(double gamma, double eta, double h, double A_H) {
  if (!(gamma > 0.0) || !(eta > 0.0) || !(h > 0.0) || !(A_H > 0.0)) {
    throw std::invalid_argument("rupture_time: inputs must be positive");
  }
  return 96.0 * std::numbers::pi * std::numbers::pi * gamma * eta * std::pow(h, 5) / (A_H * A_H);
}

FilmCriticals film_criticals(const FilmStabilityParams& p) {
  FilmCriticals out;
  out.h_c = critical_thickness(p.A_H, p.R_f, p.f, p.gamma);
  out.tau = rupture_time(p.gamma, p.eta, out.h_c, p.A_H);
  if (p.d2V_dh2 < 0.0) out.lambda_c = std::sqrt(critical_wavelength_sq(p.gamma, p.d2V_dh2));
  return out;
}

}  // namespace foamlb
