#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "foamlb/config.hpp"
#include "foamlb/metrics.hpp"
#include "foamlb/world.hpp"

namespace foamlb {

struct RunOptions {
  std::filesystem::path out_dir;  ///< empty: write nothing
  std::function<void(const std::string&)> log;
  /// Called after every step; return false to stop early.
  std::function<bool(const World&)> observer;
  std::string timestamp;  ///< written into report.txt only
};

struct RunReport {
  std::string name;
  Model model = Model::modified;
  StopReason reason = StopReason::step_cap;
  long steps = 0;
  double time = 0.0;                    ///< s
  long merge_step = -1;
  std::optional<double> merging_time;   ///< s
  long first_rupture_step = -1;
  double final_diameter = 0.0;          ///< mm, largest bubble
  double settled_diameter = 0.0;        ///< mm, from World::settled_area, 0 without a merge
  std::size_t bubbles = 0;
  BubbleMetrics metrics;
  double injected_moles = 0.0;
  bool budget_exhausted = false;
  double target_fraction = 0.0;         ///< percent, implied by the gas present at the stop
  double budget_fraction = 0.0;         ///< percent, implied by the full budget
  double melt_mass = 0.0;               ///< lattice units
  double gas_mass = 0.0;
  std::size_t negative_cells = 0;       ///< summed over all steps
  double max_speed = 0.0;
  std::vector<RuptureEvent> ruptures;
  std::vector<MergeEvent> merges;
  std::vector<std::string> warnings;
  std::uint64_t checksum = 0;
  std::vector<std::filesystem::path> files;
};

/// Gas area fraction (0..1) at which bulk melt and bulk gas pressures balance
/// for the given total masses on `cells` cells, ignoring interfaces and curvature.
/// The melt inside bubbles sits at rho_vapor and the gas in the melt at rho_dissolved.
double pressure_balance_fraction(double melt_mass, double gas_mass, double cells, const CouplingParams& p,
                                 double rho_vapor, double rho_dissolved);

/// Runs a world to its stop rule, writing snapshots every cfg.cadence steps and
/// the final state, plus report.txt. Throws InstabilityError on blow-up.
RunReport run_scenario(const SimulationConfig& cfg, const RunOptions& opts = {});

/// Report of a finished or stopped world, without running it further.
RunReport summarise(const World& world, StopReason reason);

/// Human-readable report; the only place a wall-clock timestamp appears.
std::string format_report(const RunReport& r, const std::string& timestamp = {});

}  // namespace foamlb
