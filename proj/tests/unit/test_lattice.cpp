#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "foamlb/lattice.hpp"

using namespace foamlb;

namespace {

double sum(const Distribution& f) { return std::accumulate(f.begin(), f.end(), 0.0); }

Vec2 first_moment(const Distribution& f) {
  Vec2 j{};
  for (int i = 0; i < D2Q9::Q; ++i) j += D2Q9::e(i) * f[i];
  return j;
}

}  // namespace

TEST_CASE("stencil identities") {
  // Exact in rationals: 4/9 + 4/9 + 4/36 over a common denominator of 36.
  int num = 0;
  for (const auto& r : D2Q9::weight_ratio) num += r.num * (36 / r.den);
  CHECK(num == 36);

  double wx = 0.0, wy = 0.0, wxx = 0.0, wxy = 0.0, wyy = 0.0;
  for (int i = 0; i < D2Q9::Q; ++i) {
    wx += D2Q9::w[i] * D2Q9::ex[i];
    wy += D2Q9::w[i] * D2Q9::ey[i];
    wxx += D2Q9::w[i] * D2Q9::ex[i] * D2Q9::ex[i];
    wxy += D2Q9::w[i] * D2Q9::ex[i] * D2Q9::ey[i];
    wyy += D2Q9::w[i] * D2Q9::ey[i] * D2Q9::ey[i];
  }
  CHECK(wx == 0.0);
  CHECK(wy == 0.0);
  CHECK(wxx == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(wyy == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(wxy == 0.0);
  for (int i = 0; i < D2Q9::Q; ++i) {
    CHECK(D2Q9::ex[D2Q9::opposite[i]] == -D2Q9::ex[i]);
    CHECK(D2Q9::ey[D2Q9::opposite[i]] == -D2Q9::ey[i]);
  }
}

TEST_CASE("moments of simple populations") {
  Population pop(GridShape{1, 1});
  Distribution w{};
  for (int i = 0; i < D2Q9::Q; ++i) w[i] = D2Q9::w[i];
  pop.set_cell(0, w);
  auto m = compute_moments(pop);
  CHECK(m.rho[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.velocity(0).x == doctest::Approx(0.0));
  CHECK(m.velocity(0).y == doctest::Approx(0.0));

  pop.set_cell(0, Distribution{});
  m = compute_moments(pop);
  CHECK(m.rho[0] == 0.0);
  CHECK(m.velocity(0) == Vec2{});

  pop.set_cell(0, equilibrium(2.7, {0.01, 0.0}));
  m = compute_moments(pop);
  CHECK(m.rho[0] == doctest::Approx(2.7).epsilon(1e-15));
  CHECK(m.velocity(0).x == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(std::abs(m.velocity(0).y) < 1e-16);
}

TEST_CASE("equilibrium") {
  const auto f0 = equilibrium(1.0, {});
  for (int i = 0; i < D2Q9::Q; ++i) CHECK(f0[i] == doctest::Approx(D2Q9::w[i]).epsilon(1e-15));

  for (double v : equilibrium(0.0, {0.3, -0.2})) CHECK(v == 0.0);

  const auto f = equilibrium(2.7, {0.05, 0.0});
  CHECK(sum(f) == doctest::Approx(2.7).epsilon(1e-15));
  CHECK(first_moment(f).x == doctest::Approx(0.135).epsilon(1e-14));
  CHECK(std::abs(first_moment(f).y) < 1e-16);

  CHECK_THROWS_AS(equilibrium(-1.0, {}), std::invalid_argument);
}

TEST_CASE("force term") {
  const auto none = force_term(1.3, {0.02, 0.01}, BodyForce{});
  for (double v : none) CHECK(v == 0.0);
  for (double v : force_term(0.0, {}, BodyForce{{0.0, -1e-4}})) CHECK(v == 0.0);

  const auto F = force_term(1.0, {}, BodyForce{{0.0, -1e-4}});
  for (int i = 0; i < D2Q9::Q; ++i) {
    CHECK(F[i] == doctest::Approx(D2Q9::w[i] * D2Q9::ey[i] * -1e-4 / D2Q9::cs2).epsilon(1e-14));
  }
  const Vec2 j = first_moment(F);
  CHECK(std::abs(j.x) < 1e-20);
  CHECK(j.y == doctest::Approx(-1e-4).epsilon(1e-13));
  CHECK(std::abs(sum(F)) < 1e-20);
}

TEST_CASE("collision") {
  const GridShape shape{3, 2};
  Population pop(shape);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.01, 0.3);
  for (auto& v : pop.raw()) v = U(rng);
  const auto before = compute_moments(pop);
  StepDiagnostics diag;

  SUBCASE("full relaxation lands on the equilibrium of the moments") {
    collide(pop, {1.0, 1.0}, {}, diag);
    for (std::size_t c = 0; c < shape.cells(); ++c) {
      const auto feq = equilibrium(before.rho[c], before.velocity(c));
      for (int i = 0; i < D2Q9::Q; ++i) CHECK(pop(i, c) == doctest::Approx(feq[i]).epsilon(1e-14));
    }
  }
  SUBCASE("equilibrium is a fixed point") {
    for (std::size_t c = 0; c < shape.cells(); ++c) pop.set_cell(c, equilibrium(before.rho[c], before.velocity(c)));
    const std::vector<double> in(pop.raw().begin(), pop.raw().end());
    collide(pop, {0.8, 1.0}, {}, diag);
    for (std::size_t k = 0; k < in.size(); ++k) CHECK(pop.raw()[k] == doctest::Approx(in[k]).epsilon(1e-14));
  }
  SUBCASE("viscosity") { CHECK(RelaxationParams{1.0, 1.0}.viscosity() == doctest::Approx(1.0 / 6.0)); }
  SUBCASE("relaxation time must exceed one half") {
    CHECK_THROWS_AS(collide(pop, {0.5, 1.0}, {}, diag), std::invalid_argument);
  }
}

TEST_CASE("negative populations are reported, not clamped") {
  Population pop(GridShape{2, 1});
  Distribution f{};
  f[1] = 1.0;  // |u| = 1 makes the rest equilibrium negative
  pop.set_cell(0, f);
  pop.set_cell(1, equilibrium(1.0, {}));
  StepDiagnostics diag;
  collide(pop, {0.55, 1.0}, {}, diag);
  CHECK(diag.negative_count >= 1);
  CHECK(pop(0, 0) < 0.0);
  REQUIRE_FALSE(diag.negative_cells.empty());
  CHECK(diag.negative_cells.front() == std::pair<int, int>{0, 0});
}

TEST_CASE("streaming") {
  const GridShape shape{10, 10};
  const NeighborTable table(shape, BoundaryKind::periodic);

  SUBCASE("a single population moves one cell") {
    Population pop(shape);
    pop(1, shape.index(5, 5)) = 1.0;
    pop.stream(table);
    for (std::size_t c = 0; c < shape.cells(); ++c) {
      CHECK(pop(1, c) == (c == shape.index(6, 5) ? 1.0 : 0.0));
    }
  }
  SUBCASE("uniform field is unchanged") {
    Population pop(shape);
    for (std::size_t c = 0; c < shape.cells(); ++c) pop.set_cell(c, equilibrium(1.7, {0.03, -0.01}));
    const std::vector<double> in(pop.raw().begin(), pop.raw().end());
    pop.stream(table);
    for (std::size_t k = 0; k < in.size(); ++k) CHECK(pop.raw()[k] == in[k]);
  }
  SUBCASE("streaming permutes values") {
    Population pop(shape);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (auto& v : pop.raw()) v = U(rng);
    std::vector<double> a(pop.raw().begin(), pop.raw().end());
    pop.stream(table);
    std::vector<double> b(pop.raw().begin(), pop.raw().end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("boundaries") {
  SUBCASE("periodic wrap") {
    const GridShape shape{4, 4};
    Population pop(shape);
    pop(1, shape.index(3, 2)) = 0.5;
    pop.stream(NeighborTable(shape, BoundaryKind::periodic));
    CHECK(pop(1, shape.index(0, 2)) == 0.5);
    CHECK(pop.total_mass() == 0.5);
  }
  SUBCASE("mirror reflects the wall-normal component") {
    const GridShape shape{4, 4};
    Population pop(shape);
    pop(4, shape.index(1, 0)) = 0.25;  // e = (0, -1) heading into the wall at y = -1/2
    pop.stream(NeighborTable(shape, BoundaryKind::mirror));
    CHECK(pop(2, shape.index(1, 0)) == 0.25);
    CHECK(pop.total_mass() == 0.25);

    Population diag(shape);
    diag(7, shape.index(2, 0)) = 0.125;  // e = (-1, -1)
    diag.stream(NeighborTable(shape, BoundaryKind::mirror));
    CHECK(diag(6, shape.index(1, 0)) == 0.125);  // leaves as (-1, +1)
  }
  SUBCASE("mirror box conserves mass") {
    const GridShape shape{16, 12};
    const NeighborTable table(shape, BoundaryKind::mirror);
    Population pop(shape);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.05, 0.2);
    for (auto& v : pop.raw()) v = U(rng);
    const double m0 = pop.total_mass();
    StepDiagnostics diag;
    for (int s = 0; s < 100; ++s) {
      collide(pop, {0.9, 1.0}, {}, diag);
      pop.stream(table);
    }
    CHECK(std::abs(pop.total_mass() - m0) / m0 < 1e-12);
  }
}
