#include "foamlb/growth.hpp"

#include <cmath>
#include <stdexcept>

#include "foamlb/materials.hpp"

namespace foamlb {

GrowthSchedule GrowthSchedule::ideal_gas(double temperature, double dx, double dn_dt, double budget, double dt,
                                         double pressure_scale) {
  if (!(temperature > 0.0) || !(dx > 0.0)) throw std::invalid_argument("growth: temperature and dx must be positive");
  GrowthSchedule s;
  s.A = kGasConstant * temperature / (dx * dx);
  s.dn_dt = dn_dt;
  s.budget = budget;
  s.dt = dt;
  s.pressure_scale = pressure_scale;
  s.validate();
  return s;
}

void GrowthSchedule::validate() const {
  if (A < 0.0 || dn_dt < 0.0 || budget < 0.0) throw std::invalid_argument("growth: negative rate, factor or budget");
  if (!(dt > 0.0) || !(pressure_scale > 0.0)) throw std::invalid_argument("growth: scales must be positive");
}

double GrowthSchedule::lattice_mass_per_mole() const { return A / (pressure_scale * D2Q9::cs2); }

long GrowthSchedule::injection_steps() const {
  const double q = moles_per_step();
  if (q <= 0.0 || budget <= 0.0) return 0;
  const double s = budget / q;
  // A ratio within rounding of an integer counts as that integer.
  const double r = std::round(s);
  if (std::abs(s - r) <= 1e-12 * s) return static_cast<long>(r);
  return static_cast<long>(std::ceil(s));
}

double GrowthSchedule::cumulative(long k) const {
  if (k <= 0) return 0.0;
  if (k >= injection_steps()) return budget;
  return static_cast<double>(k) * moles_per_step();
}

double inject_gas(Population& gas, BubbleRegistry& registry, const GrowthSchedule& schedule, GrowthState& state) {
  if (state.exhausted(schedule)) return 0.0;
  const std::size_t cells = registry.owned_cells();
  if (cells == 0) return 0.0;

  const double moles = schedule.cumulative(state.steps + 1) - schedule.cumulative(state.steps);
  const double dp = schedule.A * moles / static_cast<double>(cells) / schedule.pressure_scale;
  const double drho = dp / D2Q9::cs2;
  const std::size_t n = gas.cells();

  for (auto& b : registry.bubbles) {
    for (std::uint32_t c : b.cells) {
      double rho = 0.0, jx = 0.0, jy = 0.0;
      for (int i = 0; i < D2Q9::Q; ++i) {
        const double f = gas.raw()[static_cast<std::size_t>(i) * n + c];
        rho += f;
        jx += D2Q9::ex[i] * f;
        jy += D2Q9::ey[i] * f;
      }
      const Vec2 u = rho > 0.0 ? Vec2{jx / rho, jy / rho} : Vec2{};
      const Distribution add = equilibrium(drho, u);
      for (int i = 0; i < D2Q9::Q; ++i) gas.raw()[static_cast<std::size_t>(i) * n + c] += add[i];
    }
    b.moles += moles * static_cast<double>(b.cells.size()) / static_cast<double>(cells);
  }
  ++state.steps;
  state.injected = schedule.cumulative(state.steps);
  state.mass_added += drho * static_cast<double>(cells);
  return moles;
}

}  // namespace foamlb
