#pragma once

#include <span>
#include <utility>
#include <vector>

#include "foamlb/bubbles.hpp"
#include "foamlb/lattice.hpp"
#include "foamlb/rupture.hpp"
#include "foamlb/shan_chen.hpp"

namespace foamlb {

enum class VelocityMixing {
  momentum_weighted,  ///< sum(rho u) / sum(rho)
  literal,            ///< (u_melt + u_gas) / sum(rho)
};

/// Interaction strengths of the melt/gas pair. The melt has the pseudopotential
/// self-interaction G, the gas interacts with the melt through G_cross and with
/// itself through G_gas (zero for an ideal gas).
struct CouplingParams {
  double tau_melt = 1.0;
  double tau_gas = 1.0;
  double G = -5.0;
  double G_cross = 0.0;
  double G_gas = 0.0;
  double barrier_drag = 0.0;  ///< fraction of the melt velocity removed at barrier cells
  PsiKind psi_kind = PsiKind::exponential;
  VelocityMixing mixing = VelocityMixing::momentum_weighted;

  /// Throws std::invalid_argument for tau <= 0.5.
  void validate() const;
};

struct PhasePair {
  Population melt;
  Population gas;
  CouplingParams params;

  PhasePair() = default;
  PhasePair(const GridShape& shape, const CouplingParams& p);
  const GridShape& shape() const { return melt.shape(); }
};

/// Per-step derived fields of both phases.
struct CoupledFields {
  MomentField melt;
  MomentField gas;
  std::vector<double> psi_melt;
  std::vector<double> psi_gas;
  std::vector<double> pressure;
  std::vector<double> xi_melt;
  std::vector<double> xi_gas;
  std::vector<Vec2> u_total;
  std::vector<Vec2> velocity;  ///< mixture velocity including the half-step force correction
  std::vector<Vec2> force_melt;
  std::vector<Vec2> force_gas;
  std::vector<Vec2> ueq_melt;
  std::vector<Vec2> ueq_gas;

  void resize(std::size_t n);
};

Vec2 shared_velocity(double rho_melt, Vec2 j_melt, double rho_gas, Vec2 j_gas, VelocityMixing mixing);
std::vector<Vec2> shared_velocity(const MomentField& melt, const MomentField& gas, VelocityMixing mixing);

/// xi = rho cs^2 + (G/6) psi^2.
double interaction_potential(double rho, double G, PsiKind kind = PsiKind::exponential);
std::vector<double> interaction_potential(std::span<const double> rho, double G, PsiKind kind = PsiKind::exponential);

/// Combines per-bubble potentials at one cell: 0 when all vanish, otherwise the
/// extreme value whose magnitude is largest (Max if it is positive, Min if not).
double select_bubble_potential(std::span<const double> xi);

/// Bulk pressure of the mixture, cs^2 (rho_m + rho_g) + (1/6)(G psi_m^2 + 2 G_cross psi_m psi_g + G_gas psi_g^2).
double mixture_pressure(double rho_melt, double rho_gas, const CouplingParams& p);

/// Interaction zones of the bubbles and the oxide barrier between them.
struct BarrierState {
  std::vector<int> zone_owner;            ///< nearest covering bubble per cell, -1 outside every zone
  std::vector<std::uint8_t> zone_count;   ///< number of zones covering each cell (saturates at 255)
  std::vector<std::uint8_t> barrier;      ///< 1 where an intact film's zones overlap
  std::vector<FilmKey> contacts;          ///< pairs whose zones overlap, sorted
  std::vector<FilmKey> active;            ///< contacts whose film is intact, sorted
  std::size_t barrier_cells = 0;

  /// True when the film between a and b currently blocks interaction. Symmetric.
  bool blocks(int a, int b) const;
};

/// Dilates each bubble's owned cells by a disc of radius r_z and flags cells
/// covered by two or more zones of an intact film. Owner is the bubble with the
/// nearest centroid, ties to the lower id.
BarrierState barrier_zones(const BubbleRegistry& registry, const FilmTable& films, int r_z, const GridShape& shape,
                           BoundaryKind kind);

/// Density, momentum, pseudopotential and pressure of both phases.
void update_moments(const PhasePair& pair, CoupledFields& fields);

/// Interaction forces and the equilibrium velocity of each phase,
///   u_eq = u_total + tau F / rho.
/// At barrier cells the melt ignores gas lying in the zone of a bubble across
/// an intact film and its equilibrium velocity is scaled by (1 - barrier_drag),
/// so the film drains slowly. A null barrier gives the classic coupling.
void coupled_update(const PhasePair& pair, const NeighborTable& table, const BarrierState* barrier,
                    CoupledFields& fields);

}  // namespace foamlb
