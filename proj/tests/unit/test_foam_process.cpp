#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "foamlb/bubbles.hpp"
#include "foamlb/growth.hpp"
#include "foamlb/rupture.hpp"
#include "foamlb/world.hpp"

using namespace foamlb;

namespace {

std::vector<double> discs(const GridShape& s, const std::vector<std::pair<Vec2, double>>& d) {
  std::vector<double> rho(s.cells(), 0.0);
  for (std::size_t c = 0; c < s.cells(); ++c) {
    const Vec2 p{static_cast<double>(s.x_of(c)), static_cast<double>(s.y_of(c))};
    for (const auto& [centre, r] : d) {
      if (norm(p - centre) <= r) rho[c] = 1.0;
    }
  }
  return rho;
}

// Plain BFS over the 4-neighbourhood; returns the cell sets of all components.
std::set<std::set<std::size_t>> flood_fill(const std::vector<double>& rho, double threshold, const GridShape& s) {
  std::vector<char> seen(s.cells(), 0);
  std::set<std::set<std::size_t>> out;
  for (std::size_t start = 0; start < s.cells(); ++start) {
    if (seen[start] || rho[start] <= threshold) continue;
    std::set<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(start);
    seen[start] = 1;
    while (!q.empty()) {
      const std::size_t c = q.front();
      q.pop();
      comp.insert(c);
      const int x = s.x_of(c), y = s.y_of(c);
      const int nb[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
      for (const auto& n : nb) {
        if (!s.contains(n[0], n[1])) continue;
        const std::size_t k = s.index(n[0], n[1]);
        if (!seen[k] && rho[k] > threshold) {
          seen[k] = 1;
          q.push(k);
        }
      }
    }
    out.insert(comp);
  }
  return out;
}

SimulationConfig small_pair() {
  SimulationConfig cfg;
  cfg.name = "pair";
  cfg.scenario = Scenario::two_bubble;
  cfg.model = Model::modified;
  cfg.grid = {96, 64};
  cfg.boundary = BoundaryKind::mirror;
  cfg.G = -4.5;
  cfg.G_cross = 1.5;
  cfg.rho_melt = 2.327;
  cfg.rho_gas = 0.497;
  cfg.rho_melt_vapor = 0.0192;
  cfg.rho_gas_dissolved = 0.00996;
  cfg.dx = 1e-4;
  cfg.dt = 1e-4;
  cfg.bubble_diameter = 2.4e-3;
  cfg.bubble_gap = 5e-4;
  cfg.bubble_speed = 2e-2;
  cfg.max_steps = 1500;
  return cfg;
}

}  // namespace

TEST_CASE("nucleation") {
  SUBCASE("one site paints one cell") {
    const GridShape s{20, 10};
    const auto reg = nucleate(s, {1, 42, 0.0, 0});
    REQUIRE(reg.bubbles.size() == 1);
    CHECK(reg.bubbles[0].area() == 1);
    CHECK(std::count_if(reg.owner.begin(), reg.owner.end(), [](int id) { return id >= 0; }) == 1);
  }
  SUBCASE("same seed, same registry") {
    const GridShape s{64, 64};
    const auto a = nucleate(s, {5, 9, 8.0, 2});
    const auto b = nucleate(s, {5, 9, 8.0, 2});
    CHECK(a.owner == b.owner);
    for (std::size_t k = 0; k < a.bubbles.size(); ++k) CHECK(a.bubbles[k].seed_cell == b.bubbles[k].seed_cell);
    CHECK(nucleate(s, {5, 10, 8.0, 2}).owner != a.owner);
  }
  SUBCASE("six sites on the full foam domain respect the spacing") {
    const GridShape s{750, 500};
    const auto reg = nucleate(s, {6, 86, 80.0, 12});
    REQUIRE(reg.bubbles.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        const double dx = s.x_of(reg.bubbles[i].seed_cell) - s.x_of(reg.bubbles[j].seed_cell);
        const double dy = s.y_of(reg.bubbles[i].seed_cell) - s.y_of(reg.bubbles[j].seed_cell);
        CHECK(std::hypot(dx, dy) >= 80.0);
      }
    }
    std::size_t owned = 0;
    for (const auto& b : reg.bubbles) owned += b.area();
    CHECK(owned == reg.owned_cells());
    CHECK(static_cast<std::size_t>(std::count_if(reg.owner.begin(), reg.owner.end(), [](int id) { return id >= 0; })) ==
          owned);
  }
  SUBCASE("impossible spacing") {
    CHECK_THROWS_AS(nucleate(GridShape{10, 10}, {4, 1, 20.0, 0}), PlacementError);
    CHECK_THROWS_AS(nucleate(GridShape{10, 10}, {0, 1, 0.0, 0}), std::invalid_argument);
  }
  SUBCASE("uniform index stays in range") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 1000; ++k) CHECK(uniform_index(rng, 7) < 7);
  }
}

TEST_CASE("gas injection") {
  const GridShape s{16, 16};
  auto schedule = GrowthSchedule::ideal_gas(973.15, 1e-4, 1e-6, 1e-5, 1e-3, 1e5);

  SUBCASE("zero rate leaves the lattice unchanged") {
    auto zero = GrowthSchedule::ideal_gas(973.15, 1e-4, 0.0, 1e-5, 1e-3, 1e5);
    Population gas(s);
    std::vector<double> rho(s.cells(), 0.1);
    gas.set_equilibrium(rho, std::vector<Vec2>(s.cells()));
    auto reg = nucleate(s, {1, 1, 0.0, 3});
    GrowthState st;
    const std::vector<double> before(gas.raw().begin(), gas.raw().end());
    CHECK(inject_gas(gas, reg, zero, st) == 0.0);
    CHECK(std::equal(before.begin(), before.end(), gas.raw().begin()));
  }

  SUBCASE("per-cell increment scales with 1/N") {
    auto per_cell = [&](int radius) {
      Population gas(s);
      gas.set_equilibrium(std::vector<double>(s.cells(), 0.1), std::vector<Vec2>(s.cells()));
      auto reg = nucleate(s, {1, 5, 0.0, radius});
      const std::size_t c = reg.bubbles[0].seed_cell;
      const double before = compute_moments(gas).rho[c];
      GrowthState st;
      inject_gas(gas, reg, schedule, st);
      return std::pair{compute_moments(gas).rho[c] - before, reg.owned_cells()};
    };
    const auto [d1, n1] = per_cell(0);
    const auto [d2, n2] = per_cell(1);
    REQUIRE(n1 == 1);
    REQUIRE(n2 == 5);
    CHECK(d2 == doctest::Approx(d1 / 5.0).epsilon(1e-12));
    CHECK(d1 == doctest::Approx(schedule.A * schedule.moles_per_step() / schedule.pressure_scale / D2Q9::cs2)
                    .epsilon(1e-12));
  }

  SUBCASE("budget exhaustion") {
    CHECK(schedule.injection_steps() == 10000);
    auto odd = GrowthSchedule::ideal_gas(973.15, 1e-4, 3e-6, 1e-5, 1e-3, 1e5);
    CHECK(odd.injection_steps() == static_cast<long>(std::ceil(1e-5 / 3e-9)));
    Population gas(s);
    gas.set_equilibrium(std::vector<double>(s.cells(), 0.1), std::vector<Vec2>(s.cells()));
    auto reg = nucleate(s, {1, 5, 0.0, 2});
    GrowthState st;
    double total = 0.0;
    long steps = 0;
    while (!st.exhausted(odd)) {
      total += inject_gas(gas, reg, odd, st);
      ++steps;
      CHECK(st.injected <= odd.budget * (1 + 1e-12));
    }
    CHECK(steps == odd.injection_steps());
    CHECK(std::abs(st.injected - odd.budget) / odd.budget < 1e-12);
    CHECK(std::abs(total - odd.budget) / odd.budget < 1e-12);
    CHECK(inject_gas(gas, reg, odd, st) == 0.0);
    double moles = 0.0;
    for (const auto& b : reg.bubbles) moles += b.moles;
    CHECK(moles == doctest::Approx(odd.budget).epsilon(1e-12));
  }

  SUBCASE("invalid schedules") {
    CHECK_THROWS_AS(GrowthSchedule::ideal_gas(973.15, 1e-4, -1.0, 1e-5, 1e-3, 1e5), std::invalid_argument);
    CHECK_THROWS_AS(GrowthSchedule::ideal_gas(0.0, 1e-4, 1.0, 1e-5, 1e-3, 1e5), std::invalid_argument);
  }
}

TEST_CASE("bubble tracking") {
  const GridShape s{48, 32};
  TrackingSettings ts;
  ts.threshold = 0.5;
  ts.nucleation_grace = 1;

  SUBCASE("one bubble keeps its id") {
    BubbleRegistry reg;
    track_bubbles(discs(s, {{{20, 16}, 5}}), s, ts, reg);
    REQUIRE(reg.bubbles.size() == 1);
    const int id = reg.bubbles[0].id;
    for (long step = 1; step < 5; ++step) {
      ts.step = step;
      track_bubbles(discs(s, {{{20.0 + step, 16}, 5.0 + 0.3 * step}}), s, ts, reg);
      REQUIRE(reg.bubbles.size() == 1);
      CHECK(reg.bubbles[0].id == id);
    }
    CHECK(reg.merges.empty());
    CHECK(reg.warnings.empty());
  }

  SUBCASE("two disjoint bubbles keep their ids, then merge") {
    BubbleRegistry reg;
    track_bubbles(discs(s, {{{12, 16}, 5}, {{30, 16}, 5}}), s, ts, reg);
    REQUIRE(reg.bubbles.size() == 2);
    const int a = reg.bubbles[0].id;
    const int b = reg.bubbles[1].id;
    ts.step = 1;
    track_bubbles(discs(s, {{{13, 16}, 5}, {{29, 16}, 5}}), s, ts, reg);
    REQUIRE(reg.bubbles.size() == 2);
    CHECK(reg.bubbles[0].id == a);
    CHECK(reg.bubbles[1].id == b);

    ts.step = 2;
    const auto merged = discs(s, {{{14, 16}, 6}, {{28, 16}, 6}, {{21, 16}, 3}});
    const auto events = track_bubbles(merged, s, ts, reg);
    REQUIRE(events.size() == 1);
    CHECK(events[0].parents == std::vector<int>{a, b});
    CHECK(events[0].step == 2);
    REQUIRE(reg.bubbles.size() == 1);
    CHECK(reg.bubbles[0].id == events[0].child);
    CHECK(reg.bubbles[0].state == BubbleState::merged);
    CHECK(reg.bubbles[0].id != a);
    CHECK(reg.bubbles[0].id != b);

    const auto oracle = flood_fill(merged, 0.5, s);
    std::set<std::set<std::size_t>> tracked;
    for (const auto& bub : reg.bubbles) tracked.insert(std::set<std::size_t>(bub.cells.begin(), bub.cells.end()));
    CHECK(tracked == oracle);
  }

  SUBCASE("ownership partitions the gas cells") {
    BubbleRegistry reg;
    const auto rho = discs(s, {{{8, 8}, 3}, {{30, 20}, 6}, {{40, 5}, 2}});
    track_bubbles(rho, s, ts, reg);
    std::size_t gas = 0;
    for (double v : rho) gas += v > 0.5;
    CHECK(reg.owned_cells() == gas);
  }

  SUBCASE("a gas component out of nowhere is flagged") {
    BubbleRegistry reg;
    track_bubbles(discs(s, {{{12, 16}, 5}}), s, ts, reg);
    ts.step = 10;
    track_bubbles(discs(s, {{{12, 16}, 5}, {{38, 16}, 2}}), s, ts, reg);
    CHECK(reg.bubbles.size() == 2);
    CHECK(reg.warnings.size() == 1);
  }
}

TEST_CASE("rupture detection") {
  RuptureSettings rs;
  PressureProfile parabola{}, line{};
  for (int k = 0; k < RuptureSettings::kProfilePoints; ++k) {
    const double n = k - 4;
    parabola[k] = n * n;
    line[k] = 3.0 * n + 1.0;
  }
  CHECK(centre_second_derivative(parabola, 1.0) == doctest::Approx(2.0));
  CHECK(evaluate_profile(parabola, 10.0, 1.0, rs).eta == 1);
  CHECK(evaluate_profile(line, 10.0, 1.0, rs).eta == 0);
  // Linear passes and parabolic fails by at least three orders of magnitude.
  CHECK(std::abs(evaluate_profile(parabola, 10.0, 1.0, rs).d2p) >= 1e3 * rs.epsilon);

  SUBCASE("thin films rupture unconditionally") {
    const auto r = evaluate_profile(parabola, 2.0, 1.0, rs);
    CHECK(r.eta == 0);
    CHECK(r.forced);
  }

  SUBCASE("eta only goes from 1 to 0") {
    FilmState film;
    CHECK_FALSE(update_film(film, evaluate_profile(parabola, 10.0, 1.0, rs), 1));
    CHECK(film.eta == 1);
    CHECK(update_film(film, evaluate_profile(line, 10.0, 1.0, rs), 2));
    CHECK(film.eta == 0);
    CHECK(film.rupture_step == 2);
    CHECK_FALSE(update_film(film, evaluate_profile(parabola, 10.0, 1.0, rs), 3));
    CHECK(film.eta == 0);
  }

  SUBCASE("a sign change of the curvature counts as passing zero") {
    PressureProfile down = parabola;
    for (double& v : down) v = -v;
    FilmState film;
    update_film(film, evaluate_profile(parabola, 10.0, 1.0, rs), 1);
    CHECK(update_film(film, evaluate_profile(down, 10.0, 1.0, rs), 2));
  }

  SUBCASE("film geometry between two discs") {
    const GridShape s{48, 32};
    BubbleRegistry reg;
    TrackingSettings ts;
    ts.threshold = 0.5;
    track_bubbles(discs(s, {{{12, 16}, 5}, {{30, 16}, 5}}), s, ts, reg);
    const auto g = locate_film(reg.bubbles[0], reg.bubbles[1], reg.owner, s);
    REQUIRE(g);
    CHECK(g->thickness == doctest::Approx(7.0));
    CHECK(std::abs(g->midpoint.x - 21.0) <= 0.125);
    CHECK(g->normal.x == doctest::Approx(1.0));

    std::vector<double> p(s.cells());
    for (std::size_t c = 0; c < s.cells(); ++c) p[c] = 0.5 * s.x_of(c) - 2.0;
    const auto prof = sample_profile(p, s, *g, 1.0);
    for (int k = 0; k < RuptureSettings::kProfilePoints; ++k) {
      CHECK(prof[k] == doctest::Approx(0.5 * (g->midpoint.x + k - 4) - 2.0).epsilon(1e-14));
    }
    CHECK(detect_rupture(p, s, *g, 1.0, rs).eta == 0);

    // A third bubble on the segment hides the film.
    BubbleRegistry three;
    track_bubbles(discs(s, {{{8, 16}, 4}, {{21, 16}, 3}, {{34, 16}, 4}}), s, ts, three);
    auto by_x = three.bubbles;
    std::sort(by_x.begin(), by_x.end(), [](const Bubble& l, const Bubble& r) { return l.centroid.x < r.centroid.x; });
    CHECK_FALSE(locate_film(by_x[0], by_x[2], three.owner, s));
    CHECK(locate_film(by_x[0], by_x[1], three.owner, s));
  }
}

TEST_CASE("world") {
  SUBCASE("a world without bubbles stays uniform") {
    SimulationConfig cfg;
    cfg.grid = {16, 16};
    cfg.G = -4.5;
    cfg.rho_melt = 2.0;
    cfg.rho_gas = 0.5;
    cfg.rho_gas_dissolved = 0.0;
    World w(cfg);
    const auto first = w.snapshot();
    for (int t = 0; t < 50; ++t) w.step();
    const auto last = w.snapshot();
    for (std::size_t c = 0; c < first.rho_melt.size(); ++c) {
      CHECK(last.rho_melt[c] == doctest::Approx(first.rho_melt[c]).epsilon(1e-14));
      CHECK(std::abs(last.ux[c]) < 1e-15);
    }
    CHECK(w.registry().bubbles.empty());
  }

  SUBCASE("zero step cap stops immediately") {
    auto cfg = small_pair();
    cfg.max_steps = 0;
    World w(cfg);
    REQUIRE(w.termination());
    CHECK(*w.termination() == StopReason::step_cap);
    CHECK(to_string(*w.termination()) == "step cap");
  }

  SUBCASE("identical configs give identical checksums") {
    auto cfg = small_pair();
    World a(cfg), b(cfg);
    for (int t = 0; t < 100; ++t) {
      a.step();
      b.step();
      if (t % 25 == 0) CHECK(a.checksum() == b.checksum());
    }
    CHECK(a.checksum() == b.checksum());
  }

  SUBCASE("first-rupture stop, monotone films and area conservation on merge") {
    auto cfg = small_pair();
    cfg.stop = StopRule::first_rupture;
    World w(cfg);
    std::map<FilmKey, int> last_eta;
    while (!w.termination()) {
      w.step();
      for (const auto& [key, film] : w.films()) {
        if (last_eta.count(key)) CHECK(film.eta <= last_eta[key]);
        last_eta[key] = film.eta;
      }
    }
    REQUIRE(*w.termination() == StopReason::first_rupture);
    REQUIRE_FALSE(w.ruptures().empty());
    CHECK(w.ruptures().front().step == w.step_count());

    cfg.stop = StopRule::merge_settled;
    cfg.settle_steps = 100;
    World m(cfg);
    while (!m.termination()) m.step();
    REQUIRE(*m.termination() == StopReason::merge_settled);
    const auto [before, after] = m.merge_areas();
    CHECK(std::abs(static_cast<double>(after) - static_cast<double>(before)) / static_cast<double>(before) < 0.01);
    CHECK(m.registry().bubbles.size() == 1);
    CHECK(m.settled_area() > 0.0);
  }
}
