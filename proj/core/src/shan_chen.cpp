#include "foamlb/shan_chen.hpp"

#include <cmath>
#include <stdexcept>

namespace foamlb {

double pseudopotential(double rho, PsiKind kind) {
  if (rho < 0.0) throw std::invalid_argument("pseudopotential: negative density");
  return kind == PsiKind::exponential ? -std::expm1(-rho) : rho;
}

void shan_chen_force(std::span<const double> psi, double G, const NeighborTable& table, std::span<Vec2> out) {
  const std::size_t n = table.shape().cells();
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < n; ++c) {
    double sx = 0.0;
    double sy = 0.0;
    for (int i = 1; i < D2Q9::Q; ++i) {
      const double p = D2Q9::w[i] * psi[table.neighbor(i, c)];
      sx += p * D2Q9::ex[i];
      sy += p * D2Q9::ey[i];
    }
    out[c] = {-G * psi[c] * sx, -G * psi[c] * sy};
  }
}

std::vector<Vec2> shan_chen_force(std::span<const double> psi, double G, const NeighborTable& table) {
  std::vector<Vec2> out(table.shape().cells());
  shan_chen_force(psi, G, table, out);
  return out;
}

double eos_pressure(double rho, double G, PsiKind kind) {
  const double psi = pseudopotential(rho, kind);
  return rho * D2Q9::cs2 + G / 6.0 * psi * psi;
}

double eos_dp_drho(double rho, double G, PsiKind kind) {
  const double psi = pseudopotential(rho, kind);
  const double dpsi = kind == PsiKind::exponential ? std::exp(-rho) : 1.0;
  return D2Q9::cs2 + G / 3.0 * psi * dpsi;
}

double eos_d2p_drho2(double rho, double G, PsiKind kind) {
  if (kind == PsiKind::identity) return G / 3.0;
  const double e = std::exp(-rho);
  const double psi = 1.0 - e;
  // d/drho (psi psi') = psi'^2 + psi psi'' with psi' = e, psi'' = -e.
  return G / 3.0 * (e * e - psi * e);
}

CriticalPoint critical_point(PsiKind kind) {
  // G(rho) from the first condition; requires psi psi' > 0.
  auto g_of = [kind](double rho) {
    const double psi = pseudopotential(rho, kind);
    const double dpsi = kind == PsiKind::exponential ? std::exp(-rho) : 1.0;
    return -1.0 / (psi * dpsi);
  };
  auto second = [&](double rho) { return eos_d2p_drho2(rho, g_of(rho), kind); };

  double lo = 0.1;
  double hi = 2.0;
  double flo = second(lo);
  const double fhi = second(hi);
  if (!(flo * fhi < 0.0)) throw SolverError("critical_point: no sign change of d2p/drho2 on [0.1, 2]");

  constexpr int kMaxIter = 200;
  for (int it = 0; it < kMaxIter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = second(mid);
    if (fm == 0.0 || hi - lo < 1e-15) {
      return {g_of(mid), mid};
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw SolverError("critical_point: bisection did not converge");
}

std::vector<Tensor2> flux_tensor(std::span<const double> psi, double G, std::span<const double> rho,
                                 const NeighborTable& table) {
  const GridShape& s = table.shape();
  const std::size_t n = s.cells();
  // Axial neighbours: 1 (+x), 2 (+y), 3 (-x), 4 (-y).
  std::vector<Tensor2> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double pe = psi[table.neighbor(1, c)];
    const double pn = psi[table.neighbor(2, c)];
    const double pw = psi[table.neighbor(3, c)];
    const double ps = psi[table.neighbor(4, c)];
    const double gx = 0.5 * (pe - pw);
    const double gy = 0.5 * (pn - ps);
    const double lap = pe + pw + pn + ps - 4.0 * psi[c];
    const double iso = D2Q9::cs2 * rho[c] + G / 6.0 * psi[c] * psi[c] + G / 36.0 * (gx * gx + gy * gy) +
                       G / 18.0 * psi[c] * lap;
    out[c].xx = iso - G / 18.0 * gx * gx;
    out[c].yy = iso - G / 18.0 * gy * gy;
    out[c].xy = -G / 18.0 * gx * gy;
  }
  return out;
}

}  // namespace foamlb
