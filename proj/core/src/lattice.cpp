#include "foamlb/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace foamlb {

std::string to_string(BoundaryKind kind) {
  return kind == BoundaryKind::periodic ? "periodic" : "mirror";
}

void RelaxationParams::validate() const {
  if (!(tau > 0.5)) throw std::invalid_argument("relaxation time must exceed 0.5, got " + std::to_string(tau));
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
}

Distribution equilibrium(double rho, Vec2 u) {
  if (rho < 0.0) throw std::invalid_argument("equilibrium: negative density");
  Distribution feq{};
  const double usq = dot(u, u);
  for (int i = 0; i < D2Q9::Q; ++i) {
    const double eu = D2Q9::ex[i] * u.x + D2Q9::ey[i] * u.y;
    feq[i] = D2Q9::w[i] * rho *
             (1.0 + eu / D2Q9::cs2 + eu * eu / (2.0 * D2Q9::cs4) - usq / (2.0 * D2Q9::cs2));
  }
  return feq;
}

Distribution force_term(double rho, Vec2 u, const BodyForce& force) {
  Distribution out{};
  if (force.is_zero() || rho == 0.0) return out;
  for (int i = 0; i < D2Q9::Q; ++i) {
    const Vec2 e = D2Q9::e(i);
    const double eu = dot(e, u);
    const Vec2 bracket = (e - u) * (1.0 / D2Q9::cs2) + e * (eu / D2Q9::cs2);
    out[i] = D2Q9::w[i] * rho * dot(bracket, force.g);
  }
  return out;
}

namespace {

int wrap(int v, int n) {
  v %= n;
  return v < 0 ? v + n : v;
}

int mirror_coord(int v, int n) {
  // Wall half a cell outside: -1 -> 0, n -> n-1.
  while (v < 0 || v >= n) {
    if (v < 0) v = -v - 1;
    if (v >= n) v = 2 * n - v - 1;
  }
  return v;
}

}  // namespace

LinkSource link_source(BoundaryKind kind, const GridShape& shape, int x, int y, int dir) {
  int sx = x - D2Q9::ex[dir];
  int sy = y - D2Q9::ey[dir];
  if (kind == BoundaryKind::periodic) return {wrap(sx, shape.nx), wrap(sy, shape.ny), dir};

  bool flip_x = false;
  bool flip_y = false;
  if (sx < 0 || sx >= shape.nx) {
    flip_x = true;
    sx = x;
  }
  if (sy < 0 || sy >= shape.ny) {
    flip_y = true;
    sy = y;
  }
  return {sx, sy, D2Q9::reflected(dir, flip_x, flip_y)};
}

std::size_t image_index(BoundaryKind kind, const GridShape& shape, int x, int y) {
  if (kind == BoundaryKind::periodic) return shape.index(wrap(x, shape.nx), wrap(y, shape.ny));
  return shape.index(mirror_coord(x, shape.nx), mirror_coord(y, shape.ny));
}

NeighborTable::NeighborTable(const GridShape& shape, BoundaryKind kind) : shape_(shape), kind_(kind) {
  if (shape.nx <= 0 || shape.ny <= 0) throw std::invalid_argument("grid dimensions must be positive");
  const std::size_t n = shape.cells();
  nbr_.resize(D2Q9::Q * n);
  src_.resize(D2Q9::Q * n);
  for (int i = 0; i < D2Q9::Q; ++i) {
    for (int y = 0; y < shape.ny; ++y) {
      for (int x = 0; x < shape.nx; ++x) {
        const std::size_t c = shape.index(x, y);
        nbr_[static_cast<std::size_t>(i) * n + c] =
            static_cast<std::uint32_t>(image_index(kind, shape, x + D2Q9::ex[i], y + D2Q9::ey[i]));
        const LinkSource s = link_source(kind, shape, x, y, i);
        src_[static_cast<std::size_t>(i) * n + c] =
            static_cast<std::uint32_t>(static_cast<std::size_t>(s.dir) * n + shape.index(s.x, s.y));
      }
    }
  }
}

Population::Population(const GridShape& shape)
    : shape_(shape), f_(D2Q9::Q * shape.cells(), 0.0), back_(D2Q9::Q * shape.cells(), 0.0) {}

Distribution Population::cell(std::size_t c) const {
  Distribution d{};
  for (int i = 0; i < D2Q9::Q; ++i) d[i] = (*this)(i, c);
  return d;
}

void Population::set_cell(std::size_t c, const Distribution& d) {
  for (int i = 0; i < D2Q9::Q; ++i) (*this)(i, c) = d[i];
}

void Population::set_equilibrium(std::span<const double> rho, std::span<const Vec2> u) {
  for (std::size_t c = 0; c < cells(); ++c) set_cell(c, equilibrium(rho[c], u.empty() ? Vec2{} : u[c]));
}

double Population::total_mass() const {
  // Pairwise per direction keeps the rounding error small on large grids.
  double total = 0.0;
  for (int i = 0; i < D2Q9::Q; ++i) {
    double s = 0.0;
    for (double v : direction(i)) s += v;
    total += s;
  }
  return total;
}

void Population::stream(const NeighborTable& table) {
  const std::size_t n = cells();
  const double* src = f_.data();
  double* dst = back_.data();
  for (int i = 0; i < D2Q9::Q; ++i) {
    double* out = dst + static_cast<std::size_t>(i) * n;
#pragma omp parallel for schedule(static)
    for (std::size_t c = 0; c < n; ++c) out[c] = src[table.source_slot(i, c)];
  }
  f_.swap(back_);
}

void compute_moments(const Population& pop, MomentField& out) {
  const std::size_t n = pop.cells();
  if (out.rho.size() != n) out.resize(n);
  const double* f = pop.raw().data();
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < n; ++c) {
    double rho = 0.0;
    double jx = 0.0;
    double jy = 0.0;
    for (int i = 0; i < D2Q9::Q; ++i) {
      const double v = f[static_cast<std::size_t>(i) * n + c];
      rho += v;
      jx += D2Q9::ex[i] * v;
      jy += D2Q9::ey[i] * v;
    }
    out.rho[c] = rho;
    out.momentum[c] = {jx, jy};
  }
}

MomentField compute_moments(const Population& pop) {
  MomentField m;
  compute_moments(pop, m);
  return m;
}

void StepDiagnostics::record_negative(const GridShape& shape, std::size_t c) {
  ++negative_count;
  if (negative_cells.size() < kMaxRecorded) negative_cells.emplace_back(shape.x_of(c), shape.y_of(c));
}

void StepDiagnostics::merge(const StepDiagnostics& other) {
  negative_count += other.negative_count;
  for (const auto& xy : other.negative_cells) {
    if (negative_cells.size() >= kMaxRecorded) break;
    negative_cells.push_back(xy);
  }
  fast_cells += other.fast_cells;
  max_speed = std::max(max_speed, other.max_speed);
}

void collide(Population& pop, const RelaxationParams& relax, const CollisionInputs& inputs,
             StepDiagnostics& diag) {
  relax.validate();
  const std::size_t n = pop.cells();
  const double omega = relax.dt / relax.tau;
  const bool shifted = !inputs.equilibrium_velocity.empty();
  const bool forced = !inputs.body.is_zero();
  double* f = pop.raw().data();

  // Serial bookkeeping of the rare negative cells keeps the report deterministic.
  std::vector<unsigned char> negative(n, 0);
  double max_speed = 0.0;
  std::size_t fast = 0;

#pragma omp parallel for schedule(static) reduction(max : max_speed) reduction(+ : fast)
  for (std::size_t c = 0; c < n; ++c) {
    double rho = 0.0;
    double jx = 0.0;
    double jy = 0.0;
    double fc[D2Q9::Q];
    for (int i = 0; i < D2Q9::Q; ++i) {
      fc[i] = f[static_cast<std::size_t>(i) * n + c];
      rho += fc[i];
      jx += D2Q9::ex[i] * fc[i];
      jy += D2Q9::ey[i] * fc[i];
    }
    const Vec2 u = rho > 0.0 ? Vec2{jx / rho, jy / rho} : Vec2{};
    const Vec2 ueq = shifted ? inputs.equilibrium_velocity[c] : u;
    const double speed = norm(u);
    if (speed > max_speed) max_speed = speed;
    if (speed >= StepDiagnostics::kSpeedWarning) ++fast;

    const double usq = dot(ueq, ueq);
    bool neg = false;
    for (int i = 0; i < D2Q9::Q; ++i) {
      const double eu = D2Q9::ex[i] * ueq.x + D2Q9::ey[i] * ueq.y;
      const double feq = D2Q9::w[i] * rho * (1.0 + 3.0 * eu + 4.5 * eu * eu - 1.5 * usq);
      double out = fc[i] + omega * (feq - fc[i]);
      f[static_cast<std::size_t>(i) * n + c] = out;
      neg = neg || out < 0.0;
    }
    if (forced && rho > 0.0) {
      const Distribution fi = force_term(rho, u, inputs.body);
      neg = false;
      for (int i = 0; i < D2Q9::Q; ++i) {
        double& slot = f[static_cast<std::size_t>(i) * n + c];
        slot += fi[i];
        neg = neg || slot < 0.0;
      }
    }
    negative[c] = neg ? 1 : 0;
  }

  diag.max_speed = std::max(diag.max_speed, max_speed);
  diag.fast_cells += fast;
  for (std::size_t c = 0; c < n; ++c) {
    if (negative[c]) diag.record_negative(pop.shape(), c);
  }
}

}  // namespace foamlb
