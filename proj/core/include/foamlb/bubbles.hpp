#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "foamlb/types.hpp"

namespace foamlb {

enum class BubbleState { growing, merged };

struct Bubble {
  int id = -1;
  std::size_t seed_cell = 0;
  std::vector<std::uint32_t> cells;  ///< owned cells, sorted ascending
  Vec2 centroid{};
  double gas_mass = 0.0;  ///< lattice mass of the gas component in the owned cells
  double moles = 0.0;
  BubbleState state = BubbleState::growing;
  std::vector<int> parents;
  long born_step = 0;

  std::size_t area() const { return cells.size(); }
};

struct MergeEvent {
  long step = 0;
  std::vector<int> parents;
  int child = -1;
};

/// Bubble identities and cell ownership. Ids are never reused.
struct BubbleRegistry {
  std::vector<Bubble> bubbles;
  std::vector<int> owner;  ///< bubble id per cell, -1 for melt
  std::uint64_t rng_seed = 0;
  int next_id = 0;
  std::vector<MergeEvent> merges;
  std::vector<std::string> warnings;

  const Bubble* find(int id) const;
  std::size_t owned_cells() const;
};

struct NucleationConfig {
  int count = 1;
  std::uint64_t seed = 0;
  double min_spacing = 0.0;  ///< cells
  int nucleus_radius = 0;    ///< cells painted as gas around each site; 0 paints the site only
};

/// Draws `count` distinct sites uniformly, rejecting candidates closer than
/// min_spacing to an accepted site. Ownership covers a disc of nucleus_radius
/// around each site. Deterministic for a fixed seed.
/// Throws PlacementError after 100 * count rejected draws, std::invalid_argument for count < 1.
BubbleRegistry nucleate(const GridShape& shape, const NucleationConfig& config);

/// Uniform integer in [0, n) from a 64-bit engine, by rejection; identical on every platform.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n);

/// Recomputes centroid and per-bubble sums after ownership changes.
void refresh_geometry(BubbleRegistry& reg, const GridShape& shape, std::span<const double> rho_gas);

struct TrackingSettings {
  double threshold = 0.0;  ///< gas density above which a cell is gas-majority
  bool periodic = false;
  long step = 0;
  long nucleation_grace = 0;  ///< new components within this many steps of start are not flagged
};

/// Labels 4-connected gas components and matches them to the previous bubbles
/// by largest cell overlap. A component covering two or more previous bubbles
/// becomes a new bubble with those as parents; the merge is appended to
/// reg.merges and also returned.
std::vector<MergeEvent> track_bubbles(std::span<const double> rho_gas, const GridShape& shape,
                                      const TrackingSettings& settings, BubbleRegistry& reg);

}  // namespace foamlb
