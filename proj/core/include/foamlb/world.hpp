#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "foamlb/bubbles.hpp"
#include "foamlb/config.hpp"
#include "foamlb/coupler.hpp"
#include "foamlb/growth.hpp"
#include "foamlb/rupture.hpp"
#include "foamlb/snapshot.hpp"

namespace foamlb {

enum class StopReason { step_cap, first_rupture, quiescent, merge_settled };
std::string to_string(StopReason r);

struct RuptureEvent {
  long step = 0;
  FilmKey film{-1, -1};
  double thickness = 0.0;
  double d2p = 0.0;
  bool forced = false;
};

/// Complete simulation state: both lattices, derived fields, bubbles, films and growth.
class World {
 public:
  /// Builds the initial state for cfg.scenario. Throws ConfigError on an invalid config.
  explicit World(const SimulationConfig& cfg);

  /// One step: collide, stream, gas injection, moments, barrier (coarsening check),
  /// forces and coupling, bubble tracking, rupture monitoring, output hook.
  /// Throws InstabilityError when more than cfg.instability_fraction of the cells
  /// report negative populations.
  void step();

  /// Reason to stop now, if any.
  std::optional<StopReason> termination() const;

  long step_count() const { return step_; }
  double time() const { return static_cast<double>(step_) * cfg_.dt; }
  const SimulationConfig& config() const { return cfg_; }
  const PhasePair& phases() const { return pair_; }
  PhasePair& phases() { return pair_; }
  const CoupledFields& fields() const { return fields_; }
  const BubbleRegistry& registry() const { return registry_; }
  const FilmTable& films() const { return films_; }
  const BarrierState& barrier() const { return barrier_; }
  const StepDiagnostics& diagnostics() const { return diag_; }
  const GrowthSchedule& growth() const { return schedule_; }
  const GrowthState& growth_state() const { return growth_; }
  const std::vector<RuptureEvent>& ruptures() const { return ruptures_; }
  const NeighborTable& table() const { return table_; }
  double pressure_range() const { return pressure_range_; }
  /// Largest mixture speed over the grid after the last step.
  double max_speed() const { return max_speed_; }
  /// Negative-population cells summed over all steps.
  std::size_t negative_total() const { return negative_total_; }
  /// Steps in which the mixture speed reached StepDiagnostics::kSpeedWarning.
  long fast_steps() const { return fast_steps_; }
  /// Step of the first merge event, -1 before any.
  long first_merge_step() const;
  /// Gas-majority cell count right before and right after the first merge.
  std::pair<std::size_t, std::size_t> merge_areas() const { return merge_areas_; }
  /// Mean area of the largest bubble over the second half of the settle window
  /// after the first merge; 0 before any sample. Averages out the ringing of
  /// the merged bubble.
  double settled_area() const { return settled_samples_ > 0 ? settled_sum_ / settled_samples_ : 0.0; }

  FieldSnapshot snapshot() const;
  /// FNV-1a over the population bytes of both lattices.
  std::uint64_t checksum() const;

  /// Recomputes moments, barrier and coupling from the populations, e.g. after
  /// they were edited directly.
  void refresh();

  std::function<void(const World&)> on_step;

 private:
  void initialise();
  void monitor_films();

  SimulationConfig cfg_;
  NeighborTable table_;
  PhasePair pair_;
  CoupledFields fields_;
  BubbleRegistry registry_;
  FilmTable films_;
  BarrierState barrier_;
  GrowthSchedule schedule_;
  GrowthState growth_;
  StepDiagnostics diag_;
  std::vector<RuptureEvent> ruptures_;
  long step_ = 0;
  double pressure_range_ = 0.0;
  double max_speed_ = 0.0;
  std::size_t negative_total_ = 0;
  long fast_steps_ = 0;
  std::pair<std::size_t, std::size_t> merge_areas_{0, 0};
  double settled_sum_ = 0.0;
  long settled_samples_ = 0;
};

/// Smooth disc fraction used to paint bubbles: 1 inside, 0 outside, tanh over ~2 cells.
double disc_fraction(double distance, double radius);

}  // namespace foamlb
