#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "foamlb/coupler.hpp"
#include "foamlb/types.hpp"

namespace foamlb {

enum class Scenario { two_bubble, foam, custom };
enum class Model { modified, classic };
enum class StopRule { steps, first_rupture, quiescent, merge_settled };

std::string to_string(Scenario s);
std::string to_string(Model m);
std::string to_string(StopRule s);

struct OutputFormats {
  bool csv = false;
  bool pgm = false;
  bool vtk = false;
};

/// Everything a run needs. Lengths are metres and times seconds unless noted.
struct SimulationConfig {
  std::string name = "run";
  Scenario scenario = Scenario::custom;
  Model model = Model::modified;
  GridShape grid{64, 64};
  BoundaryKind boundary = BoundaryKind::mirror;

  // Lattice interaction.
  double G = -5.0;
  double G_cross = 0.0;
  double G_gas = 0.0;
  double tau_melt = 1.0;
  double tau_gas = 1.0;
  VelocityMixing mixing = VelocityMixing::momentum_weighted;

  // Lattice densities: melt outside bubbles, gas inside, and the minor phase in each.
  double rho_melt = 3.0;
  double rho_gas = 0.64;
  double rho_melt_vapor = 0.15;
  double rho_gas_dissolved = 0.0;
  double noise = 0.0;  ///< uniform perturbation amplitude on the initial melt density (custom scenario)

  // Unit scales.
  double dx = 2e-4;
  double dt = 1e-5;

  // Physical properties.
  double melt_density = 2.7;   ///< g/cm^3
  double gas_density = 0.089;  ///< g/cm^3
  double temperature = 973.15;

  // Two-bubble geometry.
  double bubble_diameter = 8e-3;
  double bubble_gap = 1e-3;    ///< surface-to-surface distance
  double bubble_speed = 3e-3;  ///< approach speed of each bubble; the melt starts in the matching potential flow

  // Nucleation.
  int nuclei = 0;
  std::uint64_t seed = 1;
  double min_spacing = 0.0;  ///< cells
  int nucleus_radius = 4;    ///< cells

  // Growth.
  double dn_dt = 0.0;       ///< mol/s
  double gas_budget = 0.0;  ///< mol

  // Oxide barrier and rupture.
  int zone_radius = 3;
  double epsilon_p = 1e-3;
  double barrier_drag = 0.17;  ///< share of the film melt velocity the oxide network removes
  double min_film = 3.0;  ///< cells

  // Stopping.
  StopRule stop = StopRule::steps;
  long max_steps = 1000;
  long settle_steps = 0;
  double quiescent_speed = 1e-4;
  double instability_fraction = 0.1;

  // Tracking and output.
  int track_interval = 1;
  long cadence = 0;  ///< snapshot every n steps, 0 for the final state only
  OutputFormats formats{};
  double histogram_bin = 5e-4;
  bool edge_bubbles_in_diameter = false;

  CouplingParams coupling() const;
  /// Pa per lattice pressure unit, from the melt density scale, dx and dt.
  double pressure_scale() const;
  /// kg/m^3 per lattice density unit.
  double density_scale() const;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Sets one key from its text value. Unknown keys and malformed values throw ConfigError.
void set_config_value(SimulationConfig& cfg, std::string_view key, std::string_view value, int line = 0);

/// Parses the flat `key = value` format; `#` starts a comment. Every key may appear once.
SimulationConfig parse_config(std::string_view text);
SimulationConfig load_config(const std::filesystem::path& path);

/// Text form that parse_config reads back to an identical config.
std::string to_text(const SimulationConfig& cfg);

/// All recognised keys, in the order to_text writes them.
const std::vector<std::string>& config_keys();

}  // namespace foamlb
