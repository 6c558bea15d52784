#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "foamlb/shan_chen.hpp"

using namespace foamlb;

namespace {

// Direct neighbour sum, independent of the library's loop order.
Vec2 brute_force(const std::vector<double>& psi, double G, const GridShape& s, int x, int y) {
  Vec2 f{};
  for (int i = 1; i < D2Q9::Q; ++i) {
    const int nx = (x + D2Q9::ex[i] + s.nx) % s.nx;
    const int ny = (y + D2Q9::ey[i] + s.ny) % s.ny;
    f += D2Q9::e(i) * (D2Q9::w[i] * psi[s.index(nx, ny)]);
  }
  return f * (-G * psi[s.index(x, y)]);
}

// Single-component pseudopotential fluid relaxed from a slab near coexistence.
std::vector<double> relaxed_slab(const GridShape& s, double G, double liquid, double vapor, int steps) {
  const NeighborTable table(s, BoundaryKind::periodic);
  Population pop(s);
  std::vector<double> rho(s.cells());
  for (std::size_t c = 0; c < s.cells(); ++c) {
    const double x = s.x_of(c);
    const double phi = 0.5 * (std::tanh((x - s.nx / 4.0) / 3.0) - std::tanh((x - 3.0 * s.nx / 4.0) / 3.0));
    rho[c] = vapor + (liquid - vapor) * phi;
  }
  pop.set_equilibrium(rho, std::vector<Vec2>(s.cells()));
  std::vector<double> psi(s.cells());
  std::vector<Vec2> ueq(s.cells()), force(s.cells());
  StepDiagnostics diag;
  MomentField m;
  for (int t = 0; t < steps; ++t) {
    compute_moments(pop, m);
    for (std::size_t c = 0; c < s.cells(); ++c) psi[c] = psi_exp(m.rho[c]);
    shan_chen_force(psi, G, table, force);
    for (std::size_t c = 0; c < s.cells(); ++c) ueq[c] = m.velocity(c) + force[c] * (1.0 / m.rho[c]);
    collide(pop, {1.0, 1.0}, {ueq, {}}, diag);
    pop.stream(table);
  }
  compute_moments(pop, m);
  return m.rho;
}

}  // namespace

TEST_CASE("pseudopotential") {
  CHECK(pseudopotential(0.0) == 0.0);
  CHECK(pseudopotential(1.0) == doctest::Approx(0.6321205588285577).epsilon(1e-15));
  CHECK(pseudopotential(50.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pseudopotential(1.7, PsiKind::identity) == 1.7);
  CHECK_THROWS_AS(pseudopotential(-0.1), std::invalid_argument);
}

TEST_CASE("interaction force") {
  const GridShape s{16, 12};
  const NeighborTable table(s, BoundaryKind::periodic);

  SUBCASE("uniform field gives no force") {
    const std::vector<double> psi(s.cells(), pseudopotential(2.1));
    for (const Vec2& f : shan_chen_force(psi, -5.0, table)) {
      CHECK(std::abs(f.x) < 1e-15);
      CHECK(std::abs(f.y) < 1e-15);
    }
  }
  SUBCASE("G = 0 gives no force") {
    std::vector<double> psi(s.cells());
    for (std::size_t c = 0; c < s.cells(); ++c) psi[c] = pseudopotential(0.1 + 0.01 * static_cast<double>(c % 37));
    for (const Vec2& f : shan_chen_force(psi, 0.0, table)) CHECK(f == Vec2{});
  }
  SUBCASE("step profile: antisymmetric in x, no y component") {
    std::vector<double> psi(s.cells());
    for (std::size_t c = 0; c < s.cells(); ++c) {
      const int x = s.x_of(c);
      psi[c] = pseudopotential(x >= 4 && x < 12 ? 2.0 : 0.1);
    }
    const auto f = shan_chen_force(psi, -5.0, table);
    for (int y = 0; y < s.ny; ++y) {
      for (int x = 0; x < s.nx; ++x) {
        const Vec2 ref = brute_force(psi, -5.0, s, x, y);
        const Vec2 got = f[s.index(x, y)];
        CHECK(got.x == doctest::Approx(ref.x).epsilon(1e-13));
        CHECK(std::abs(got.y) < 1e-15);
        // Mirror partner about x = 7.5.
        CHECK(got.x == doctest::Approx(-f[s.index(15 - x, y)].x).epsilon(1e-13));
      }
    }
    CHECK(f[s.index(4, 0)].x > 0.0);  // liquid edge pulled inwards
  }
}

TEST_CASE("equation of state") {
  CHECK(eos_pressure(0.0, -4.0) == 0.0);
  CHECK(eos_pressure(std::log(2.0), -4.0) == doctest::Approx(0.06438).epsilon(1e-4));
  CHECK(eos_pressure(2.7, 0.0) == doctest::Approx(0.9).epsilon(1e-15));
  // Derivatives against central differences.
  for (double rho : {0.3, 0.9, 1.8}) {
    const double h = 1e-5;
    CHECK(eos_dp_drho(rho, -4.5) ==
          doctest::Approx((eos_pressure(rho + h, -4.5) - eos_pressure(rho - h, -4.5)) / (2 * h)).epsilon(1e-8));
    CHECK(eos_d2p_drho2(rho, -4.5) ==
          doctest::Approx((eos_dp_drho(rho + h, -4.5) - eos_dp_drho(rho - h, -4.5)) / (2 * h)).epsilon(1e-7));
  }
}

TEST_CASE("critical point") {
  const auto cp = critical_point();
  CHECK(std::abs(cp.G_critical + 4.0) < 1e-9);
  CHECK(std::abs(cp.rho_critical - std::log(2.0)) < 1e-9);
  CHECK(std::abs(eos_dp_drho(cp.rho_critical, cp.G_critical)) < 1e-10);
  CHECK(std::abs(eos_d2p_drho2(cp.rho_critical, cp.G_critical)) < 1e-10);
  CHECK_THROWS_AS(critical_point(PsiKind::identity), SolverError);
}

TEST_CASE("momentum flux tensor") {
  const GridShape s{8, 8};
  const NeighborTable table(s, BoundaryKind::periodic);

  SUBCASE("uniform field is isotropic at the bulk pressure") {
    const std::vector<double> rho(s.cells(), 1.3);
    const std::vector<double> psi(s.cells(), pseudopotential(1.3));
    for (const auto& P : flux_tensor(psi, -4.5, rho, table)) {
      CHECK(P.xx == doctest::Approx(eos_pressure(1.3, -4.5)).epsilon(1e-14));
      CHECK(P.yy == doctest::Approx(P.xx).epsilon(1e-14));
      CHECK(P.xy == 0.0);
    }
  }
  SUBCASE("G = 0 gives the ideal-gas pressure") {
    std::vector<double> rho(s.cells());
    for (std::size_t c = 0; c < s.cells(); ++c) rho[c] = 0.5 + 0.1 * static_cast<double>(c % 5);
    std::vector<double> psi(s.cells());
    for (std::size_t c = 0; c < s.cells(); ++c) psi[c] = pseudopotential(rho[c]);
    const auto P = flux_tensor(psi, 0.0, rho, table);
    for (std::size_t c = 0; c < s.cells(); ++c) {
      CHECK(P[c].xx == doctest::Approx(rho[c] / 3.0).epsilon(1e-15));
      CHECK(P[c].xy == 0.0);
    }
  }
  SUBCASE("normal component is constant across a relaxed flat interface") {
    // The gradient expansion needs an interface several cells wide, hence G close to critical.
    const GridShape slab{128, 4};
    const double G = -4.1;
    const auto rho = relaxed_slab(slab, G, 0.95, 0.45, 20000);
    std::vector<double> psi(rho.size());
    for (std::size_t c = 0; c < rho.size(); ++c) psi[c] = pseudopotential(rho[c]);
    const auto P = flux_tensor(psi, G, rho, NeighborTable(slab, BoundaryKind::periodic));
    double lo = 1e300, hi = -1e300, mean = 0.0;
    for (int x = 0; x < slab.nx; ++x) {
      const double pxx = P[slab.index(x, 1)].xx;
      lo = std::min(lo, pxx);
      hi = std::max(hi, pxx);
      mean += pxx / slab.nx;
    }
    CHECK(rho[slab.index(64, 1)] > 0.95);
    CHECK(rho[slab.index(0, 1)] < 0.5);
    CHECK((hi - lo) / std::abs(mean) < 0.02);
  }
}
