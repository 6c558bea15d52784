#pragma once

#include <vector>

#include "foamlb/types.hpp"

namespace foamlb {

/// Immutable copy of the fields at one step.
struct FieldSnapshot {
  long step = 0;
  double time = 0.0;  ///< s
  GridShape shape{};
  double dx = 1.0;    ///< m per cell
  BoundaryKind boundary = BoundaryKind::mirror;
  std::vector<double> rho_melt;
  std::vector<double> rho_gas;
  std::vector<double> pressure;
  std::vector<double> ux;
  std::vector<double> uy;
  std::vector<int> bubble_id;  ///< -1 for melt

  /// Throws std::invalid_argument when an array does not match the grid.
  void validate() const;
};

}  // namespace foamlb
