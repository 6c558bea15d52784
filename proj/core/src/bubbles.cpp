#include "foamlb/bubbles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "foamlb/labeling.hpp"

namespace foamlb {

const Bubble* BubbleRegistry::find(int id) const {
  for (const auto& b : bubbles) {
    if (b.id == id) return &b;
  }
  return nullptr;
}

std::size_t BubbleRegistry::owned_cells() const {
  std::size_t total = 0;
  for (const auto& b : bubbles) total += b.cells.size();
  return total;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

BubbleRegistry nucleate(const GridShape& shape, const NucleationConfig& config) {
  if (config.count < 1) throw std::invalid_argument("nucleate: count must be at least 1");
  if (static_cast<std::size_t>(config.count) > shape.cells()) throw PlacementError("nucleate: more sites than cells");

  BubbleRegistry reg;
  reg.rng_seed = config.seed;
  reg.owner.assign(shape.cells(), -1);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> sites;
  const long cap = 100L * config.count;
  long rejected = 0;
  const double min_sq = config.min_spacing * config.min_spacing;
  while (static_cast<int>(sites.size()) < config.count) {
    const std::size_t c = uniform_index(rng, shape.cells());
    const double x = shape.x_of(c);
    const double y = shape.y_of(c);
    bool ok = true;
    for (std::size_t s : sites) {
      const double ddx = shape.x_of(s) - x;
      const double ddy = shape.y_of(s) - y;
      if (s == c || ddx * ddx + ddy * ddy < min_sq) {
        ok = false;
        break;
      }
    }
    if (ok) {
      sites.push_back(c);
    } else if (++rejected > cap) {
      throw PlacementError("nucleate: could not place " + std::to_string(config.count) + " sites with spacing " +
                           std::to_string(config.min_spacing) + " after " + std::to_string(cap) + " retries");
    }
  }

  const int r = config.nucleus_radius;
  for (std::size_t s : sites) {
    Bubble b;
    b.id = reg.next_id++;
    b.seed_cell = s;
    const int sx = shape.x_of(s);
    const int sy = shape.y_of(s);
    for (int y = sy - r; y <= sy + r; ++y) {
      for (int x = sx - r; x <= sx + r; ++x) {
        if (!shape.contains(x, y) || (x - sx) * (x - sx) + (y - sy) * (y - sy) > r * r) continue;
        const std::size_t c = shape.index(x, y);
        if (reg.owner[c] >= 0) continue;  // overlapping nuclei: first site wins
        reg.owner[c] = b.id;
        b.cells.push_back(static_cast<std::uint32_t>(c));
      }
    }
    std::sort(b.cells.begin(), b.cells.end());
    reg.bubbles.push_back(std::move(b));
  }
  refresh_geometry(reg, shape, {});
  return reg;
}

void refresh_geometry(BubbleRegistry& reg, const GridShape& shape, std::span<const double> rho_gas) {
  for (auto& b : reg.bubbles) {
    double sx = 0.0;
    double sy = 0.0;
    double mass = 0.0;
    for (std::uint32_t c : b.cells) {
      sx += shape.x_of(c);
      sy += shape.y_of(c);
      if (!rho_gas.empty()) mass += rho_gas[c];
    }
    const double n = b.cells.empty() ? 1.0 : static_cast<double>(b.cells.size());
    b.centroid = {sx / n, sy / n};
    b.gas_mass = mass;
  }
}

std::vector<MergeEvent> track_bubbles(std::span<const double> rho_gas, const GridShape& shape,
                                      const TrackingSettings& settings, BubbleRegistry& reg) {
  const std::size_t n = shape.cells();
  std::vector<std::uint8_t> mask(n);
  for (std::size_t c = 0; c < n; ++c) mask[c] = rho_gas[c] > settings.threshold ? 1 : 0;
  const ComponentLabels comp = label_components(mask, shape, settings.periodic);

  if (reg.owner.size() != n) reg.owner.assign(n, -1);

  // Overlap counts component -> previous id.
  std::vector<std::map<int, std::size_t>> overlap(static_cast<std::size_t>(comp.count));
  std::vector<std::vector<std::uint32_t>> members(static_cast<std::size_t>(comp.count));
  for (std::size_t c = 0; c < n; ++c) {
    const int k = comp.labels[c];
    if (k < 0) continue;
    members[static_cast<std::size_t>(k)].push_back(static_cast<std::uint32_t>(c));
    if (reg.owner[c] >= 0) ++overlap[static_cast<std::size_t>(k)][reg.owner[c]];
  }

  // A previous bubble continues into the single-parent component with which it overlaps most.
  std::map<int, std::pair<std::size_t, int>> best;  // prev id -> (overlap, component)
  for (int k = 0; k < comp.count; ++k) {
    const auto& ov = overlap[static_cast<std::size_t>(k)];
    if (ov.size() != 1) continue;
    const auto& [id, count] = *ov.begin();
    auto it = best.find(id);
    if (it == best.end() || count > it->second.first) best[id] = {count, k};
  }

  std::map<int, const Bubble*> previous;
  for (const auto& b : reg.bubbles) previous[b.id] = &b;

  std::vector<Bubble> next;
  std::vector<MergeEvent> events;
  next.reserve(static_cast<std::size_t>(comp.count));
  for (int k = 0; k < comp.count; ++k) {
    const auto& ov = overlap[static_cast<std::size_t>(k)];
    Bubble b;
    b.cells = std::move(members[static_cast<std::size_t>(k)]);
    if (ov.size() == 1 && best[ov.begin()->first].second == k) {
      const Bubble& prev = *previous.at(ov.begin()->first);
      b.id = prev.id;
      b.seed_cell = prev.seed_cell;
      b.state = prev.state;
      b.parents = prev.parents;
      b.born_step = prev.born_step;
    } else if (ov.size() >= 2) {
      b.id = reg.next_id++;
      b.state = BubbleState::merged;
      for (const auto& [id, count] : ov) b.parents.push_back(id);
      b.seed_cell = b.cells.front();
      b.born_step = settings.step;
      events.push_back({settings.step, b.parents, b.id});
    } else {
      // Either a split fragment or a component with no previous overlap.
      b.id = reg.next_id++;
      b.seed_cell = b.cells.front();
      b.born_step = settings.step;
      if (ov.empty() && settings.step > settings.nucleation_grace) {
        reg.warnings.push_back("step " + std::to_string(settings.step) + ": spurious gas component of " +
                               std::to_string(b.cells.size()) + " cells (bubble " + std::to_string(b.id) + ")");
      }
    }
    next.push_back(std::move(b));
  }

  std::fill(reg.owner.begin(), reg.owner.end(), -1);
  for (const auto& b : next) {
    for (std::uint32_t c : b.cells) reg.owner[c] = b.id;
  }
  reg.bubbles = std::move(next);
  refresh_geometry(reg, shape, rho_gas);
  reg.merges.insert(reg.merges.end(), events.begin(), events.end());
  return events;
}

}  // namespace foamlb
