#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "foamlb/snapshot.hpp"
#include "foamlb/types.hpp"

namespace foamlb {

struct MetricOptions {
  double melt_density = 2.7;     ///< g/cm^3
  double gas_density = 0.089;    ///< g/cm^3
  double bin_width = 5e-4;       ///< m
  bool include_edge_bubbles = false;  ///< in the diameter statistics; edge bubbles always count for the fraction
};

struct BubbleMetrics {
  double bubble_fraction = 0.0;       ///< percent of cells
  double foam_density = 0.0;          ///< g/cm^3
  double mean_bubble_diameter = 0.0;  ///< mm, 0 without measurable bubbles
  std::size_t bubble_count = 0;       ///< all components
  std::size_t measured_count = 0;     ///< components entering the diameter statistics
  std::vector<double> diameters;      ///< mm, measured components in label order
  double bin_width = 0.5;             ///< mm
  std::vector<std::size_t> histogram; ///< counts per bin [k w, (k+1) w)
};

/// Equivalent-circle diameter of `cells` cells of size dx: 2 sqrt(area / pi) dx.
double equivalent_diameter(double cells, double dx);

/// Metrics of a gas mask. Components are 4-connected and never cross the tile
/// seams at multiples of `tile` (the clipping rule for tiled images). A bubble
/// touching a tile edge is an edge bubble.
BubbleMetrics measure_mask(std::span<const std::uint8_t> gas, const GridShape& shape, double dx,
                           const MetricOptions& opts, GridShape tile = {});

/// Metrics of a snapshot's gas cells (bubble_id >= 0).
BubbleMetrics measure(const FieldSnapshot& snap, const MetricOptions& opts);

/// Reflective tiling: tile (i, j) is flipped in x when i is odd and in y when j is odd.
/// Throws std::invalid_argument for reps below 1.
template <typename T>
std::vector<T> mirror_tile(std::span<const T> field, const GridShape& shape, int kx, int ky);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  ///< row-major, y = 0 first
};

/// Combined density mapped to 8-bit gray, densest cell black, lightest white.
/// A uniform field maps to a single mid level.
GrayImage density_image(const FieldSnapshot& snap);

/// Mirror-tiled grayscale image of the combined density.
GrayImage mirror_tile(const FieldSnapshot& snap, int kx, int ky);

/// Largest jump between horizontally or vertically adjacent values, split into
/// pairs that straddle a tile seam and pairs inside tiles.
struct SeamReport {
  double max_seam_jump = 0.0;
  double max_interior_jump = 0.0;
};
SeamReport seam_scan(std::span<const double> field, const GridShape& tiled, const GridShape& tile);

/// Mask of the gas cells of a tiled snapshot, for measure_mask.
std::vector<std::uint8_t> gas_mask(const FieldSnapshot& snap);

}  // namespace foamlb
