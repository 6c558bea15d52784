#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "foamlb/stencil.hpp"
#include "foamlb/types.hpp"

namespace foamlb {

using Distribution = std::array<double, D2Q9::Q>;

struct RelaxationParams {
  double tau = 1.0;
  double dt = 1.0;

  /// Throws std::invalid_argument unless tau > 0.5 and dt > 0.
  void validate() const;
  /// Kinematic viscosity in lattice units, cs^2 dt (tau - 1/2).
  double viscosity() const { return D2Q9::cs2 * dt * (tau - 0.5); }
};

struct BodyForce {
  Vec2 g{};
  bool is_zero() const { return g.x == 0.0 && g.y == 0.0; }
};

/// Second-order equilibrium. Throws std::invalid_argument for rho < 0.
Distribution equilibrium(double rho, Vec2 u);

/// External-force source term per direction:
///   F_i = w_i rho [ (e_i - u)/cs^2 + (e_i.u) e_i / cs^2 ] . g
/// The second bracket is applied along e_i so that the expression is a vector.
Distribution force_term(double rho, Vec2 u, const BodyForce& force);

/// Where a pulled link (x, y, i) reads its population from after boundary handling.
struct LinkSource {
  int x;
  int y;
  int dir;
};

/// Boundary rule for streaming. Periodic wraps; mirror reflects the wall-normal
/// component of the incoming velocity at a wall half a cell outside the domain.
LinkSource link_source(BoundaryKind kind, const GridShape& shape, int x, int y, int dir);

/// Image cell of (x, y) for stencil reads: periodic wrap or mirror reflection.
std::size_t image_index(BoundaryKind kind, const GridShape& shape, int x, int y);

/// Precomputed neighbour and streaming-source tables for one grid and boundary kind.
class NeighborTable {
 public:
  NeighborTable() = default;
  NeighborTable(const GridShape& shape, BoundaryKind kind);

  const GridShape& shape() const { return shape_; }
  BoundaryKind kind() const { return kind_; }

  /// Cell index of the image of c + e_i.
  std::uint32_t neighbor(int dir, std::size_t c) const { return nbr_[static_cast<std::size_t>(dir) * shape_.cells() + c]; }
  /// Flat population slot (dir * cells + cell) that streams into (dir, c).
  std::uint32_t source_slot(int dir, std::size_t c) const {
    return src_[static_cast<std::size_t>(dir) * shape_.cells() + c];
  }
  std::span<const std::uint32_t> neighbors(int dir) const {
    return {nbr_.data() + static_cast<std::size_t>(dir) * shape_.cells(), shape_.cells()};
  }

 private:
  GridShape shape_{};
  BoundaryKind kind_ = BoundaryKind::periodic;
  std::vector<std::uint32_t> nbr_;
  std::vector<std::uint32_t> src_;
};

/// D2Q9 populations for one phase, structure-of-arrays per direction,
/// double-buffered for streaming.
class Population {
 public:
  Population() = default;
  explicit Population(const GridShape& shape);

  const GridShape& shape() const { return shape_; }
  std::size_t cells() const { return shape_.cells(); }

  double& operator()(int dir, std::size_t c) { return f_[static_cast<std::size_t>(dir) * cells() + c]; }
  double operator()(int dir, std::size_t c) const { return f_[static_cast<std::size_t>(dir) * cells() + c]; }

  std::span<double> direction(int dir) { return {f_.data() + static_cast<std::size_t>(dir) * cells(), cells()}; }
  std::span<const double> direction(int dir) const {
    return {f_.data() + static_cast<std::size_t>(dir) * cells(), cells()};
  }
  std::span<const double> raw() const { return f_; }
  std::span<double> raw() { return f_; }

  Distribution cell(std::size_t c) const;
  void set_cell(std::size_t c, const Distribution& d);
  /// Sets every cell to the equilibrium of the given per-cell fields.
  void set_equilibrium(std::span<const double> rho, std::span<const Vec2> u);

  double total_mass() const;

  /// Pull-streams the current buffer into the back buffer and swaps.
  void stream(const NeighborTable& table);

 private:
  GridShape shape_{};
  std::vector<double> f_;
  std::vector<double> back_;
};

/// Density and momentum per cell.
struct MomentField {
  std::vector<double> rho;
  std::vector<Vec2> momentum;

  void resize(std::size_t n) {
    rho.assign(n, 0.0);
    momentum.assign(n, Vec2{});
  }
  /// u = rho u / rho, zero where rho == 0.
  Vec2 velocity(std::size_t c) const {
    return rho[c] > 0.0 ? momentum[c] * (1.0 / rho[c]) : Vec2{};
  }
};

void compute_moments(const Population& pop, MomentField& out);
MomentField compute_moments(const Population& pop);

/// Per-step stability report. Negative populations are recorded, never clamped.
struct StepDiagnostics {
  static constexpr std::size_t kMaxRecorded = 64;
  static constexpr double kSpeedWarning = 0.3;

  std::size_t negative_count = 0;
  std::vector<std::pair<int, int>> negative_cells;
  std::size_t fast_cells = 0;
  double max_speed = 0.0;

  void record_negative(const GridShape& shape, std::size_t c);
  void merge(const StepDiagnostics& other);
  void clear() { *this = StepDiagnostics{}; }
};

struct CollisionInputs {
  /// Equilibrium velocity per cell (velocity-shift forcing). Empty: use the barycentric velocity.
  std::span<const Vec2> equilibrium_velocity{};
  BodyForce body{};
};

/// BGK collision f <- f + (dt/tau)(f_eq - f) + F_i, in place on the current buffer.
void collide(Population& pop, const RelaxationParams& relax, const CollisionInputs& inputs,
             StepDiagnostics& diag);

}  // namespace foamlb
