#include "foamlb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace foamlb {

double equivalent_diameter(double cells, double dx) { return 2.0 * std::sqrt(cells / std::numbers::pi) * dx; }

BubbleMetrics measure_mask(std::span<const std::uint8_t> gas, const GridShape& shape, double dx,
                           const MetricOptions& opts, GridShape tile) {
  if (gas.size() != shape.cells()) throw std::invalid_argument("measure: mask size does not match the grid");
  if (!(opts.bin_width > 0.0)) throw std::invalid_argument("measure: bin width must be positive");
  if (tile.nx <= 0 || tile.ny <= 0) tile = shape;

  const std::size_t n = shape.cells();
  std::vector<int> label(n, -1);
  std::vector<std::size_t> area;
  std::vector<bool> edge;
  std::vector<std::size_t> stack;
  std::size_t gas_cells = 0;

  auto on_tile_edge = [&](int x, int y) {
    const int tx = x % tile.nx;
    const int ty = y % tile.ny;
    return tx == 0 || ty == 0 || tx == tile.nx - 1 || ty == tile.ny - 1;
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (!gas[start]) continue;
    ++gas_cells;
    if (label[start] >= 0) continue;
    const int id = static_cast<int>(area.size());
    area.push_back(0);
    edge.push_back(false);
    label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      ++area[id];
      const int x = shape.x_of(c);
      const int y = shape.y_of(c);
      if (on_tile_edge(x, y)) edge[id] = true;
      constexpr int dx4[4] = {1, -1, 0, 0};
      constexpr int dy4[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int tx = x + dx4[k];
        const int ty = y + dy4[k];
        if (!shape.contains(tx, ty)) continue;
        if (tx / tile.nx != x / tile.nx || ty / tile.ny != y / tile.ny) continue;  // seam cut
        const std::size_t t = shape.index(tx, ty);
        if (gas[t] && label[t] < 0) {
          label[t] = id;
          stack.push_back(t);
        }
      }
    }
  }

  BubbleMetrics m;
  const double f = n == 0 ? 0.0 : static_cast<double>(gas_cells) / static_cast<double>(n);
  m.bubble_fraction = 100.0 * f;
  m.foam_density = opts.melt_density * (1.0 - f) + opts.gas_density * f;
  m.bubble_count = area.size();
  m.bin_width = opts.bin_width * 1e3;
  double sum = 0.0;
  for (std::size_t k = 0; k < area.size(); ++k) {
    if (edge[k] && !opts.include_edge_bubbles) continue;
    const double d = equivalent_diameter(static_cast<double>(area[k]), dx) * 1e3;
    m.diameters.push_back(d);
    sum += d;
    const auto bin = static_cast<std::size_t>(std::floor(d / m.bin_width));
    if (m.histogram.size() <= bin) m.histogram.resize(bin + 1, 0);
    ++m.histogram[bin];
  }
  m.measured_count = m.diameters.size();
  m.mean_bubble_diameter = m.diameters.empty() ? 0.0 : sum / static_cast<double>(m.diameters.size());
  return m;
}

std::vector<std::uint8_t> gas_mask(const FieldSnapshot& snap) {
  std::vector<std::uint8_t> mask(snap.bubble_id.size());
  for (std::size_t c = 0; c < mask.size(); ++c) mask[c] = snap.bubble_id[c] >= 0 ? 1 : 0;
  return mask;
}

BubbleMetrics measure(const FieldSnapshot& snap, const MetricOptions& opts) {
  snap.validate();
  return measure_mask(gas_mask(snap), snap.shape, snap.dx, opts);
}

template <typename T>
std::vector<T> mirror_tile(std::span<const T> field, const GridShape& shape, int kx, int ky) {
  if (kx < 1 || ky < 1) throw std::invalid_argument("mirror_tile: repetitions must be at least 1");
  if (field.size() != shape.cells()) throw std::invalid_argument("mirror_tile: field size does not match the grid");
  const GridShape out_shape{shape.nx * kx, shape.ny * ky};
  std::vector<T> out(out_shape.cells());
  for (int y = 0; y < out_shape.ny; ++y) {
    const int ty = y / shape.ny;
    const int sy = ty % 2 == 0 ? y % shape.ny : shape.ny - 1 - y % shape.ny;
    for (int x = 0; x < out_shape.nx; ++x) {
      const int tx = x / shape.nx;
      const int sx = tx % 2 == 0 ? x % shape.nx : shape.nx - 1 - x % shape.nx;
      out[out_shape.index(x, y)] = field[shape.index(sx, sy)];
    }
  }
  return out;
}

template std::vector<double> mirror_tile<double>(std::span<const double>, const GridShape&, int, int);
template std::vector<std::uint8_t> mirror_tile<std::uint8_t>(std::span<const std::uint8_t>, const GridShape&, int,
                                                             int);
template std::vector<int> mirror_tile<int>(std::span<const int>, const GridShape&, int, int);

GrayImage density_image(const FieldSnapshot& snap) {
  snap.validate();
  const std::size_t n = snap.shape.cells();
  std::vector<double> total(n);
  for (std::size_t c = 0; c < n; ++c) total[c] = snap.rho_melt[c] + snap.rho_gas[c];
  GrayImage img;
  img.width = snap.shape.nx;
  img.height = snap.shape.ny;
  img.pixels.resize(n);
  if (n == 0) return img;
  const auto [lo, hi] = std::minmax_element(total.begin(), total.end());
  const double range = *hi - *lo;
  for (std::size_t c = 0; c < n; ++c) {
    const double t = range > 0.0 ? (*hi - total[c]) / range : 0.5;
    img.pixels[c] = static_cast<std::uint8_t>(std::lround(255.0 * t));
  }
  return img;
}

GrayImage mirror_tile(const FieldSnapshot& snap, int kx, int ky) {
  const GrayImage base = density_image(snap);
  GrayImage out;
  out.width = base.width * kx;
  out.height = base.height * ky;
  out.pixels = mirror_tile<std::uint8_t>(base.pixels, snap.shape, kx, ky);
  return out;
}

SeamReport seam_scan(std::span<const double> field, const GridShape& tiled, const GridShape& tile) {
  if (field.size() != tiled.cells()) throw std::invalid_argument("seam_scan: field size does not match the grid");
  SeamReport r;
  for (int y = 0; y < tiled.ny; ++y) {
    for (int x = 0; x < tiled.nx; ++x) {
      const double v = field[tiled.index(x, y)];
      if (x + 1 < tiled.nx) {
        const double j = std::abs(field[tiled.index(x + 1, y)] - v);
        double& slot = (x + 1) % tile.nx == 0 ? r.max_seam_jump : r.max_interior_jump;
        slot = std::max(slot, j);
      }
      if (y + 1 < tiled.ny) {
        const double j = std::abs(field[tiled.index(x, y + 1)] - v);
        double& slot = (y + 1) % tile.ny == 0 ? r.max_seam_jump : r.max_interior_jump;
        slot = std::max(slot, j);
      }
    }
  }
  return r;
}

}  // namespace foamlb
