#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "foamlb/types.hpp"

namespace foamlb {

struct ComponentLabels {
  std::vector<int> labels;  ///< component index per cell, -1 for background
  int count = 0;
};

/// 4-connected components of the nonzero cells of `mask`. Labels are assigned
/// in row-major order of each component's first cell. With `periodic`, the
/// grid wraps in both directions.
ComponentLabels label_components(std::span<const std::uint8_t> mask, const GridShape& shape, bool periodic = false);

}  // namespace foamlb
