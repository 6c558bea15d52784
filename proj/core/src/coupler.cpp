#include "foamlb/coupler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace foamlb {

void CouplingParams::validate() const {
  if (!(tau_melt > 0.5) || !(tau_gas > 0.5)) throw std::invalid_argument("coupling: relaxation times must exceed 0.5");
  if (!(barrier_drag >= 0.0 && barrier_drag <= 1.0)) throw std::invalid_argument("coupling: barrier_drag must lie in [0, 1]");
}

PhasePair::PhasePair(const GridShape& shape, const CouplingParams& p) : melt(shape), gas(shape), params(p) {
  params.validate();
}

void CoupledFields::resize(std::size_t n) {
  melt.resize(n);
  gas.resize(n);
  psi_melt.assign(n, 0.0);
  psi_gas.assign(n, 0.0);
  pressure.assign(n, 0.0);
  xi_melt.assign(n, 0.0);
  xi_gas.assign(n, 0.0);
  u_total.assign(n, Vec2{});
  velocity.assign(n, Vec2{});
  force_melt.assign(n, Vec2{});
  force_gas.assign(n, Vec2{});
  ueq_melt.assign(n, Vec2{});
  ueq_gas.assign(n, Vec2{});
}

Vec2 shared_velocity(double rho_melt, Vec2 j_melt, double rho_gas, Vec2 j_gas, VelocityMixing mixing) {
  const double total = rho_melt + rho_gas;
  if (total <= 0.0) return {};
  if (mixing == VelocityMixing::momentum_weighted) return (j_melt + j_gas) * (1.0 / total);
  const Vec2 um = rho_melt > 0.0 ? j_melt * (1.0 / rho_melt) : Vec2{};
  const Vec2 ug = rho_gas > 0.0 ? j_gas * (1.0 / rho_gas) : Vec2{};
  return (um + ug) * (1.0 / total);
}

std::vector<Vec2> shared_velocity(const MomentField& melt, const MomentField& gas, VelocityMixing mixing) {
  if (melt.rho.size() != gas.rho.size()) throw std::invalid_argument("shared_velocity: field sizes differ");
  std::vector<Vec2> out(melt.rho.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = shared_velocity(melt.rho[c], melt.momentum[c], gas.rho[c], gas.momentum[c], mixing);
  }
  return out;
}

double interaction_potential(double rho, double G, PsiKind kind) {
  const double psi = pseudopotential(rho, kind);
  return rho * D2Q9::cs2 + G / 6.0 * psi * psi;
}

std::vector<double> interaction_potential(std::span<const double> rho, double G, PsiKind kind) {
  std::vector<double> out(rho.size());
  for (std::size_t c = 0; c < rho.size(); ++c) out[c] = interaction_potential(rho[c], G, kind);
  return out;
}

double select_bubble_potential(std::span<const double> xi) {
  if (xi.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(xi.begin(), xi.end());
  if (*hi == 0.0 && *lo == 0.0) return 0.0;
  return std::abs(*hi) >= std::abs(*lo) ? *hi : *lo;
}

namespace {

inline double psi_of(double rho, PsiKind kind) { return kind == PsiKind::exponential ? psi_exp(rho) : std::max(rho, 0.0); }

}  // namespace

double mixture_pressure(double rho_melt, double rho_gas, const CouplingParams& p) {
  const double pm = psi_of(rho_melt, p.psi_kind);
  const double pg = psi_of(rho_gas, p.psi_kind);
  return D2Q9::cs2 * (rho_melt + rho_gas) + (p.G * pm * pm + 2.0 * p.G_cross * pm * pg + p.G_gas * pg * pg) / 6.0;
}

bool BarrierState::blocks(int a, int b) const {
  return std::binary_search(active.begin(), active.end(), film_key(a, b));
}

BarrierState barrier_zones(const BubbleRegistry& registry, const FilmTable& films, int r_z, const GridShape& shape,
                           BoundaryKind kind) {
  if (r_z < 0) throw std::invalid_argument("barrier_zones: negative zone radius");
  const std::size_t n = shape.cells();
  BarrierState st;
  st.zone_owner.assign(n, -1);
  st.zone_count.assign(n, 0);
  st.barrier.assign(n, 0);
  if (registry.bubbles.size() < 2) return st;

  std::vector<std::pair<int, int>> disc;
  for (int dy = -r_z; dy <= r_z; ++dy) {
    for (int dx = -r_z; dx <= r_z; ++dx) {
      if (dx * dx + dy * dy <= r_z * r_z) disc.emplace_back(dx, dy);
    }
  }

  // Up to four covering bubbles are remembered per cell; more never happens
  // for films between circular cells but the count stays exact.
  constexpr int kKeep = 4;
  std::vector<std::array<int, kKeep>> cover(n);
  std::vector<int> stamp(n, -1);
  std::vector<FilmKey> contacts;

  auto owned_by = [&](int x, int y, int id) {
    return shape.contains(x, y) && registry.owner[shape.index(x, y)] == id;
  };

  for (std::size_t k = 0; k < registry.bubbles.size(); ++k) {
    const Bubble& b = registry.bubbles[k];
    const int stamp_id = static_cast<int>(k);
    auto cover_cell = [&](std::size_t c) {
      if (stamp[c] == stamp_id) return;
      stamp[c] = stamp_id;
      const int count = st.zone_count[c];
      for (int j = 0; j < std::min(count, kKeep); ++j) contacts.push_back(film_key(cover[c][j], b.id));
      if (count < kKeep) cover[c][count] = b.id;
      if (count < 255) ++st.zone_count[c];
      const int cur = st.zone_owner[c];
      if (cur < 0) {
        st.zone_owner[c] = b.id;
        return;
      }
      const Bubble* other = registry.find(cur);
      const Vec2 p{static_cast<double>(shape.x_of(c)), static_cast<double>(shape.y_of(c))};
      const Vec2 da = p - b.centroid;
      const Vec2 db = p - other->centroid;
      const double d_new = dot(da, da);
      const double d_cur = dot(db, db);
      if (d_new < d_cur || (d_new == d_cur && b.id < cur)) st.zone_owner[c] = b.id;
    };

    for (std::uint32_t c : b.cells) {
      cover_cell(c);
      const int x = shape.x_of(c);
      const int y = shape.y_of(c);
      const bool edge = !owned_by(x + 1, y, b.id) || !owned_by(x - 1, y, b.id) || !owned_by(x, y + 1, b.id) ||
                        !owned_by(x, y - 1, b.id);
      if (!edge) continue;
      for (const auto& [dx, dy] : disc) {
        int tx = x + dx;
        int ty = y + dy;
        if (kind == BoundaryKind::periodic) {
          tx = (tx % shape.nx + shape.nx) % shape.nx;
          ty = (ty % shape.ny + shape.ny) % shape.ny;
        } else if (!shape.contains(tx, ty)) {
          continue;
        }
        cover_cell(shape.index(tx, ty));
      }
    }
  }

  std::sort(contacts.begin(), contacts.end());
  contacts.erase(std::unique(contacts.begin(), contacts.end()), contacts.end());
  st.contacts = contacts;
  for (const auto& key : contacts) {
    if (film_intact(films, key.first, key.second)) st.active.push_back(key);
  }
  if (st.active.empty()) return st;

  for (std::size_t c = 0; c < n; ++c) {
    const int count = st.zone_count[c];
    if (count < 2) continue;
    const int kept = std::min(count, kKeep);
    bool flagged = false;
    for (int i = 0; i < kept && !flagged; ++i) {
      for (int j = i + 1; j < kept && !flagged; ++j) flagged = st.blocks(cover[c][i], cover[c][j]);
    }
    if (flagged) {
      st.barrier[c] = 1;
      ++st.barrier_cells;
    }
  }
  return st;
}

void update_moments(const PhasePair& pair, CoupledFields& fields) {
  const std::size_t n = pair.melt.cells();
  if (fields.psi_melt.size() != n) fields.resize(n);
  compute_moments(pair.melt, fields.melt);
  compute_moments(pair.gas, fields.gas);
  const CouplingParams& p = pair.params;
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < n; ++c) {
    const double rm = fields.melt.rho[c];
    const double rg = fields.gas.rho[c];
    const double pm = psi_of(rm, p.psi_kind);
    const double pg = psi_of(rg, p.psi_kind);
    fields.psi_melt[c] = pm;
    fields.psi_gas[c] = pg;
    fields.xi_melt[c] = rm * D2Q9::cs2 + p.G / 6.0 * pm * pm;
    fields.xi_gas[c] = rg * D2Q9::cs2 + p.G_gas / 6.0 * pg * pg;
    fields.pressure[c] =
        D2Q9::cs2 * (rm + rg) + (p.G * pm * pm + 2.0 * p.G_cross * pm * pg + p.G_gas * pg * pg) / 6.0;
  }
}

void coupled_update(const PhasePair& pair, const NeighborTable& table, const BarrierState* barrier,
                    CoupledFields& fields) {
  const std::size_t n = pair.melt.cells();
  const CouplingParams& p = pair.params;
  const double* psi_m = fields.psi_melt.data();
  const double* psi_g = fields.psi_gas.data();
  const bool masked = barrier != nullptr && barrier->barrier_cells > 0;

#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < n; ++c) {
    double smx = 0.0, smy = 0.0, sgx = 0.0, sgy = 0.0;
    for (int i = 1; i < D2Q9::Q; ++i) {
      const std::uint32_t y = table.neighbor(i, c);
      const double w = D2Q9::w[i];
      smx += w * psi_m[y] * D2Q9::ex[i];
      smy += w * psi_m[y] * D2Q9::ey[i];
      sgx += w * psi_g[y] * D2Q9::ex[i];
      sgy += w * psi_g[y] * D2Q9::ey[i];
    }

    // Gas seen by the melt: across an intact film the far bubble is ignored.
    double vgx = sgx, vgy = sgy;
    if (masked && barrier->barrier[c]) {
      const int own = barrier->zone_owner[c];
      vgx = 0.0;
      vgy = 0.0;
      for (int i = 1; i < D2Q9::Q; ++i) {
        const std::uint32_t y = table.neighbor(i, c);
        const int other = barrier->zone_owner[y];
        if (other >= 0 && other != own && barrier->blocks(own, other)) continue;
        const double w = D2Q9::w[i];
        vgx += w * psi_g[y] * D2Q9::ex[i];
        vgy += w * psi_g[y] * D2Q9::ey[i];
      }
    }

    const Vec2 fm{-psi_m[c] * (p.G * smx + p.G_cross * vgx), -psi_m[c] * (p.G * smy + p.G_cross * vgy)};
    const Vec2 fg{-psi_g[c] * (p.G_cross * smx + p.G_gas * sgx), -psi_g[c] * (p.G_cross * smy + p.G_gas * sgy)};
    fields.force_melt[c] = fm;
    fields.force_gas[c] = fg;

    const double rm = fields.melt.rho[c];
    const double rg = fields.gas.rho[c];
    const Vec2 ut = shared_velocity(rm, fields.melt.momentum[c], rg, fields.gas.momentum[c], p.mixing);
    fields.u_total[c] = ut;
    const double total = rm + rg;
    fields.velocity[c] = total > 0.0 ? (fields.melt.momentum[c] + fields.gas.momentum[c] + (fm + fg) * 0.5) * (1.0 / total)
                                     : Vec2{};
    fields.ueq_melt[c] = rm > 0.0 ? ut + fm * (p.tau_melt / rm) : ut;
    if (masked && barrier->barrier[c]) fields.ueq_melt[c] = fields.ueq_melt[c] * (1.0 - p.barrier_drag);
    fields.ueq_gas[c] = rg > 0.0 ? ut + fg * (p.tau_gas / rg) : ut;
  }
}

}  // namespace foamlb
