#include "foamlb/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace foamlb {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::step_cap: return "step cap";
    case StopReason::first_rupture: return "first rupture";
    case StopReason::quiescent: return "quiescent";
    case StopReason::merge_settled: return "merge settled";
  }
  return "?";
}

void FieldSnapshot::validate() const {
  const std::size_t n = shape.cells();
  for (std::size_t s : {rho_melt.size(), rho_gas.size(), pressure.size(), ux.size(), uy.size(), bubble_id.size()}) {
    if (s != n) throw std::invalid_argument("snapshot: array size does not match the grid");
  }
}

double disc_fraction(double distance, double radius) { return 0.5 * (1.0 - std::tanh(distance - radius)); }

namespace {

struct Disc {
  Vec2 centre;
  double radius;
  Vec2 velocity;
};

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

World::World(const SimulationConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  table_ = NeighborTable(cfg_.grid, cfg_.boundary);
  pair_ = PhasePair(cfg_.grid, cfg_.coupling());
  fields_.resize(cfg_.grid.cells());
  schedule_ = GrowthSchedule::ideal_gas(cfg_.temperature, cfg_.dx, cfg_.dn_dt, cfg_.gas_budget, cfg_.dt,
                                        cfg_.pressure_scale());
  initialise();
}

void World::initialise() {
  const GridShape& shape = cfg_.grid;
  const std::size_t n = shape.cells();
  std::vector<Disc> discs;

  if (cfg_.scenario == Scenario::two_bubble) {
    const double r = 0.5 * cfg_.bubble_diameter / cfg_.dx;
    const double offset = r + 0.5 * cfg_.bubble_gap / cfg_.dx;
    const double cx = 0.5 * (shape.nx - 1);
    const double cy = 0.5 * (shape.ny - 1);
    const double u = cfg_.bubble_speed * cfg_.dt / cfg_.dx;
    discs.push_back({{cx - offset, cy}, r, {u, 0.0}});
    discs.push_back({{cx + offset, cy}, r, {-u, 0.0}});
  } else if (cfg_.nuclei > 0) {
    NucleationConfig nc;
    nc.count = cfg_.nuclei;
    nc.seed = cfg_.seed;
    nc.min_spacing = cfg_.min_spacing;
    nc.nucleus_radius = cfg_.nucleus_radius;
    registry_ = nucleate(shape, nc);
    for (const auto& b : registry_.bubbles) {
      const Vec2 c{static_cast<double>(shape.x_of(b.seed_cell)), static_cast<double>(shape.y_of(b.seed_cell))};
      discs.push_back({c, cfg_.nucleus_radius + 0.5, {}});
    }
  }

  std::vector<double> rho_m(n), rho_g(n);
  std::vector<Vec2> u(n);
  std::mt19937_64 rng(cfg_.seed);
  for (std::size_t c = 0; c < n; ++c) {
    const Vec2 p{static_cast<double>(shape.x_of(c)), static_cast<double>(shape.y_of(c))};
    double phi = 0.0;
    Vec2 vel{};
    for (const auto& d : discs) {
      const Vec2 r = p - d.centre;
      const double dist = norm(r);
      phi = std::max(phi, disc_fraction(dist, d.radius));
      // Potential flow around a moving cylinder, so the melt carries the bubble.
      if (dist <= d.radius) {
        vel += d.velocity;
      } else {
        const Vec2 rh = r * (1.0 / dist);
        vel += (rh * (2.0 * dot(d.velocity, rh)) - d.velocity) * (d.radius * d.radius / (dist * dist));
      }
    }
    double melt = cfg_.rho_melt;
    if (cfg_.noise > 0.0) melt += cfg_.noise * (2.0 * unit_uniform(rng) - 1.0);
    rho_m[c] = melt * (1.0 - phi) + cfg_.rho_melt_vapor * phi;
    rho_g[c] = cfg_.rho_gas_dissolved * (1.0 - phi) + cfg_.rho_gas * phi;
    u[c] = vel;
  }
  pair_.melt.set_equilibrium(rho_m, u);
  pair_.gas.set_equilibrium(rho_g, u);

  registry_.rng_seed = cfg_.seed;
  if (!discs.empty()) {
    TrackingSettings ts;
    ts.threshold = 0.5 * cfg_.rho_gas;
    ts.periodic = cfg_.boundary == BoundaryKind::periodic;
    ts.step = 0;
    track_bubbles(rho_g, shape, ts, registry_);
  } else {
    registry_.owner.assign(n, -1);
  }
  refresh();
}

void World::refresh() {
  update_moments(pair_, fields_);
  barrier_ = barrier_zones(registry_, films_, cfg_.zone_radius, cfg_.grid, cfg_.boundary);
  coupled_update(pair_, table_, cfg_.model == Model::modified ? &barrier_ : nullptr, fields_);
  const auto [lo, hi] = std::minmax_element(fields_.pressure.begin(), fields_.pressure.end());
  pressure_range_ = *hi - *lo;
  max_speed_ = 0.0;
  for (const Vec2& v : fields_.velocity) max_speed_ = std::max(max_speed_, norm(v));
}

void World::step() {
  diag_.clear();
  const CouplingParams& p = pair_.params;
  collide(pair_.melt, {p.tau_melt, 1.0}, {fields_.ueq_melt, {}}, diag_);
  collide(pair_.gas, {p.tau_gas, 1.0}, {fields_.ueq_gas, {}}, diag_);
  const std::size_t n = cfg_.grid.cells();
  if (static_cast<double>(diag_.negative_count) > cfg_.instability_fraction * static_cast<double>(n)) {
    throw InstabilityError("step " + std::to_string(step_ + 1) + ": " + std::to_string(diag_.negative_count) +
                           " cells with negative populations");
  }
  negative_total_ += diag_.negative_count;
  pair_.melt.stream(table_);
  pair_.gas.stream(table_);
  ++step_;

  if (schedule_.dn_dt > 0.0) inject_gas(pair_.gas, registry_, schedule_, growth_);

  update_moments(pair_, fields_);

  // Coarsening check: only films that are still intact keep a barrier.
  barrier_ = barrier_zones(registry_, films_, cfg_.zone_radius, cfg_.grid, cfg_.boundary);
  coupled_update(pair_, table_, cfg_.model == Model::modified ? &barrier_ : nullptr, fields_);

  const auto [lo, hi] = std::minmax_element(fields_.pressure.begin(), fields_.pressure.end());
  pressure_range_ = *hi - *lo;
  max_speed_ = 0.0;
  for (const Vec2& v : fields_.velocity) max_speed_ = std::max(max_speed_, norm(v));
  if (max_speed_ >= StepDiagnostics::kSpeedWarning) ++fast_steps_;

  if (step_ % cfg_.track_interval == 0 && !registry_.bubbles.empty()) {
    const std::size_t before = registry_.owned_cells();
    TrackingSettings ts;
    ts.threshold = 0.5 * cfg_.rho_gas;
    ts.periodic = cfg_.boundary == BoundaryKind::periodic;
    ts.step = step_;
    ts.nucleation_grace = 0;
    const bool had_merge = !registry_.merges.empty();
    const auto events = track_bubbles(fields_.gas.rho, cfg_.grid, ts, registry_);
    if (!had_merge && !events.empty()) merge_areas_ = {before, registry_.owned_cells()};
    const long since = step_ - first_merge_step();
    if (!registry_.merges.empty() && 2 * since >= cfg_.settle_steps) {
      std::size_t largest = 0;
      for (const auto& b : registry_.bubbles) largest = std::max(largest, b.area());
      settled_sum_ += static_cast<double>(largest);
      ++settled_samples_;
    }
    // Gas that connects around a film still counts as its rupture.
    for (const MergeEvent& ev : events) {
      for (std::size_t i = 0; i < ev.parents.size(); ++i) {
        for (std::size_t j = i + 1; j < ev.parents.size(); ++j) {
          const FilmKey key = film_key(ev.parents[i], ev.parents[j]);
          FilmState& film = films_[key];
          if (film.eta == 0) continue;
          film.bubbles = key;
          film.eta = 0;
          film.rupture_step = step_;
          film.forced = true;
          ruptures_.push_back({step_, key, film.thickness, film.last_d2p, true});
        }
      }
    }
  }

  monitor_films();
  if (on_step) on_step(*this);
}

void World::monitor_films() {
  RuptureSettings settings;
  settings.epsilon = cfg_.epsilon_p;
  settings.min_thickness = cfg_.min_film;
  for (const FilmKey& key : barrier_.contacts) {
    if (!film_intact(films_, key.first, key.second)) continue;
    const Bubble* a = registry_.find(key.first);
    const Bubble* b = registry_.find(key.second);
    if (a == nullptr || b == nullptr) continue;
    const auto geom = locate_film(*a, *b, registry_.owner, cfg_.grid);
    if (!geom) continue;
    auto [it, inserted] = films_.try_emplace(key);
    FilmState& film = it->second;
    if (inserted) {
      film.bubbles = key;
      film.first_contact_step = step_;
    }
    film.thickness = geom->thickness;
    const RuptureResult r = detect_rupture(fields_.pressure, cfg_.grid, *geom, pressure_range_, settings);
    if (update_film(film, r, step_)) ruptures_.push_back({step_, key, geom->thickness, r.d2p, r.forced});
  }
}

long World::first_merge_step() const { return registry_.merges.empty() ? -1 : registry_.merges.front().step; }

std::optional<StopReason> World::termination() const {
  switch (cfg_.stop) {
    case StopRule::first_rupture:
      if (!ruptures_.empty()) return StopReason::first_rupture;
      break;
    case StopRule::quiescent:
      if (growth_.exhausted(schedule_) && step_ > 0 && max_speed_ < cfg_.quiescent_speed) return StopReason::quiescent;
      break;
    case StopRule::merge_settled: {
      const long m = first_merge_step();
      if (m >= 0 && step_ - m >= cfg_.settle_steps) return StopReason::merge_settled;
      break;
    }
    case StopRule::steps: break;
  }
  if (step_ >= cfg_.max_steps) return StopReason::step_cap;
  return std::nullopt;
}

FieldSnapshot World::snapshot() const {
  FieldSnapshot s;
  s.step = step_;
  s.time = time();
  s.shape = cfg_.grid;
  s.dx = cfg_.dx;
  s.boundary = cfg_.boundary;
  s.rho_melt = fields_.melt.rho;
  s.rho_gas = fields_.gas.rho;
  s.pressure = fields_.pressure;
  const std::size_t n = cfg_.grid.cells();
  s.ux.resize(n);
  s.uy.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    s.ux[c] = fields_.velocity[c].x;
    s.uy[c] = fields_.velocity[c].y;
  }
  s.bubble_id = registry_.owner;
  if (s.bubble_id.size() != n) s.bubble_id.assign(n, -1);
  return s;
}

std::uint64_t World::checksum() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::span<const double> data) {
    for (double v : data) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &v, sizeof v);
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
      }
    }
  };
  mix(pair_.melt.raw());
  mix(pair_.gas.raw());
  return h;
}

}  // namespace foamlb
