#pragma once

#include "foamlb/bubbles.hpp"
#include "foamlb/lattice.hpp"

namespace foamlb {

/// Gas release into the bubbles. The pressure rise per gas cell and step is
///   dp = A (dn/dt) dt / N
/// with N the current number of gas cells, realised as a density increment dp / cs^2.
struct GrowthSchedule {
  double A = 0.0;               ///< pressure per mole per cell, Pa/mol
  double dn_dt = 0.0;           ///< release rate, mol/s
  double budget = 0.0;          ///< total gas to release, mol
  double dt = 1.0;              ///< physical time step, s
  double pressure_scale = 1.0;  ///< Pa per lattice pressure unit

  /// Ideal gas, A = R T / V with V = dx^2 per unit depth.
  static GrowthSchedule ideal_gas(double temperature, double dx, double dn_dt, double budget, double dt,
                                  double pressure_scale);

  /// Moles released per step.
  double moles_per_step() const { return dn_dt * dt; }
  /// Lattice mass that carries one mole.
  double lattice_mass_per_mole() const;
  /// Step count after which the budget is exhausted, ceil(budget / (dn/dt dt)); 0 when nothing is released.
  long injection_steps() const;
  /// Cumulative moles after k injection steps, exactly `budget` from injection_steps() on.
  double cumulative(long k) const;

  /// Throws std::invalid_argument for negative rates, budgets or scales.
  void validate() const;
};

struct GrowthState {
  long steps = 0;           ///< injection steps performed
  double injected = 0.0;    ///< cumulative moles
  double mass_added = 0.0;  ///< cumulative lattice mass

  bool exhausted(const GrowthSchedule& s) const { return steps >= s.injection_steps(); }
};

/// Adds one step of gas to the owned cells of every bubble, at each cell's
/// current velocity. Nothing happens without gas cells or once the budget is
/// spent. Returns the moles released in this call.
double inject_gas(Population& gas, BubbleRegistry& registry, const GrowthSchedule& schedule, GrowthState& state);

}  // namespace foamlb
