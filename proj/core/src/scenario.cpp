#include "foamlb/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "foamlb/output.hpp"

namespace foamlb {

double pressure_balance_fraction(double melt_mass, double gas_mass, double cells, const CouplingParams& p,
                                 double rho_vapor, double rho_dissolved) {
  if (!(cells > 0.0)) throw std::invalid_argument("pressure_balance_fraction: no cells");
  auto imbalance = [&](double f) {
    const double rho_l = (melt_mass - rho_vapor * cells * f) / (cells * (1.0 - f));
    const double rho_g = (gas_mass - rho_dissolved * cells * (1.0 - f)) / (cells * f);
    return mixture_pressure(rho_vapor, std::max(rho_g, 0.0), p) - mixture_pressure(std::max(rho_l, 0.0), rho_dissolved, p);
  };
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  if (imbalance(lo) <= 0.0) return 0.0;
  if (imbalance(hi) >= 0.0) return 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (imbalance(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

RunReport summarise(const World& world, StopReason reason) {
  const SimulationConfig& cfg = world.config();
  RunReport r;
  r.name = cfg.name;
  r.model = cfg.model;
  r.reason = reason;
  r.steps = world.step_count();
  r.time = world.time();
  r.merge_step = world.first_merge_step();
  if (r.merge_step >= 0) r.merging_time = static_cast<double>(r.merge_step) * cfg.dt;
  if (!world.ruptures().empty()) r.first_rupture_step = world.ruptures().front().step;

  const BubbleRegistry& reg = world.registry();
  r.bubbles = reg.bubbles.size();
  std::size_t largest = 0;
  for (const auto& b : reg.bubbles) largest = std::max(largest, b.area());
  r.final_diameter = equivalent_diameter(static_cast<double>(largest), cfg.dx) * 1e3;
  if (world.settled_area() > 0.0) r.settled_diameter = equivalent_diameter(world.settled_area(), cfg.dx) * 1e3;

  MetricOptions mo;
  mo.melt_density = cfg.melt_density;
  mo.gas_density = cfg.gas_density;
  mo.bin_width = cfg.histogram_bin;
  mo.include_edge_bubbles = cfg.edge_bubbles_in_diameter;
  r.metrics = measure(world.snapshot(), mo);

  r.injected_moles = world.growth_state().injected;
  r.budget_exhausted = world.growth_state().exhausted(world.growth());
  r.melt_mass = world.phases().melt.total_mass();
  r.gas_mass = world.phases().gas.total_mass();
  const double cells = static_cast<double>(cfg.grid.cells());
  const CouplingParams cp = cfg.coupling();
  r.target_fraction =
      100.0 * pressure_balance_fraction(r.melt_mass, r.gas_mass, cells, cp, cfg.rho_melt_vapor, cfg.rho_gas_dissolved);
  const double remaining =
      (world.growth().budget - r.injected_moles) * world.growth().lattice_mass_per_mole();
  r.budget_fraction = 100.0 * pressure_balance_fraction(r.melt_mass, r.gas_mass + std::max(remaining, 0.0), cells, cp,
                                                        cfg.rho_melt_vapor, cfg.rho_gas_dissolved);
  r.negative_cells = world.negative_total();
  r.max_speed = world.max_speed();
  r.ruptures = world.ruptures();
  r.merges = reg.merges;
  r.warnings = reg.warnings;
  if (world.fast_steps() > 0) {
    r.warnings.push_back(std::to_string(world.fast_steps()) + " steps with velocities at or above " +
                         std::to_string(StepDiagnostics::kSpeedWarning));
  }
  r.checksum = world.checksum();
  return r;
}

namespace {

std::string num(double v, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string stem_for(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%08ld", step);
  return buf;
}

}  // namespace

std::string format_report(const RunReport& r, const std::string& timestamp) {
  std::string s;
  s += "run: " + r.name + "\n";
  if (!timestamp.empty()) s += "finished: " + timestamp + "\n";
  s += "model: " + to_string(r.model) + "\n";
  s += "stop: " + to_string(r.reason) + " after " + std::to_string(r.steps) + " steps (" + num(r.time) + " s)\n";
  if (r.merging_time) s += "merging time: " + num(*r.merging_time) + " s (step " + std::to_string(r.merge_step) + ")\n";
  if (r.settled_diameter > 0.0) s += "settled diameter: " + num(r.settled_diameter) + " mm\n";
  if (r.first_rupture_step >= 0) s += "first rupture: step " + std::to_string(r.first_rupture_step) + "\n";
  s += "bubbles: " + std::to_string(r.bubbles) + ", largest diameter " + num(r.final_diameter) + " mm\n";
  s += "bubble fraction: " + num(r.metrics.bubble_fraction) + " %\n";
  s += "foam density: " + num(r.metrics.foam_density) + " g/cm^3\n";
  s += "mean bubble diameter: " + num(r.metrics.mean_bubble_diameter) + " mm over " +
       std::to_string(r.metrics.measured_count) + " bubbles\n";
  s += "histogram (" + num(r.metrics.bin_width) + " mm bins):";
  for (std::size_t c : r.metrics.histogram) s += " " + std::to_string(c);
  s += "\n";
  if (r.injected_moles > 0.0) s += "gas released: " + num(r.injected_moles) + " mol" + (r.budget_exhausted ? " (budget exhausted)" : "") + "\n";
  s += "pressure-balance fraction: " + num(r.target_fraction) + " % now, " + num(r.budget_fraction) +
       " % with the full budget\n";
  s += "lattice mass: melt " + num(r.melt_mass, "%.17g") + ", gas " + num(r.gas_mass, "%.17g") + "\n";
  s += "negative populations: " + std::to_string(r.negative_cells) + " cell-steps\n";
  for (const auto& e : r.ruptures) {
    s += "rupture: step " + std::to_string(e.step) + " film " + std::to_string(e.film.first) + "-" +
         std::to_string(e.film.second) + " thickness " + num(e.thickness) + (e.forced ? " (thickness floor)" : "") + "\n";
  }
  for (const auto& m : r.merges) {
    s += "merge: step " + std::to_string(m.step) + " ->" + std::to_string(m.child) + " from";
    for (int p : m.parents) s += " " + std::to_string(p);
    s += "\n";
  }
  for (const auto& w : r.warnings) s += "warning: " + w + "\n";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(r.checksum));
  s += std::string("checksum: ") + buf + "\n";
  return s;
}

RunReport run_scenario(const SimulationConfig& cfg, const RunOptions& opts) {
  World world(cfg);
  auto log = [&](const std::string& m) {
    if (opts.log) opts.log(m);
  };
  std::vector<std::filesystem::path> files;
  auto dump = [&](const World& w) {
    if (opts.out_dir.empty()) return;
    auto f = write_outputs(w.snapshot(), cfg.formats, opts.out_dir, stem_for(w.step_count()));
    files.insert(files.end(), f.begin(), f.end());
  };

  if (cfg.cadence > 0) dump(world);
  std::optional<StopReason> reason = world.termination();
  std::size_t merges_seen = 0;
  std::size_t ruptures_seen = 0;
  while (!reason) {
    world.step();
    if (world.ruptures().size() > ruptures_seen) {
      for (; ruptures_seen < world.ruptures().size(); ++ruptures_seen) {
        const auto& e = world.ruptures()[ruptures_seen];
        log("step " + std::to_string(e.step) + ": film " + std::to_string(e.film.first) + "-" +
            std::to_string(e.film.second) + " ruptured");
      }
    }
    if (world.registry().merges.size() > merges_seen) {
      for (; merges_seen < world.registry().merges.size(); ++merges_seen) {
        log("step " + std::to_string(world.registry().merges[merges_seen].step) + ": bubbles merged");
      }
    }
    if (cfg.cadence > 0 && world.step_count() % cfg.cadence == 0) dump(world);
    if (opts.observer && !opts.observer(world)) break;
    reason = world.termination();
  }
  if (!reason) reason = StopReason::step_cap;
  if (cfg.cadence == 0 || world.step_count() % cfg.cadence != 0) dump(world);

  RunReport report = summarise(world, *reason);
  report.files = std::move(files);
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    const auto path = opts.out_dir / "report.txt";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report", path.string());
    out << format_report(report, opts.timestamp);
    report.files.push_back(path);
  }
  log("stopped: " + to_string(*reason) + " at step " + std::to_string(world.step_count()));
  return report;
}

}  // namespace foamlb
