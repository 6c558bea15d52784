#include "foamlb/labeling.hpp"

#include <stdexcept>

namespace foamlb {

ComponentLabels label_components(std::span<const std::uint8_t> mask, const GridShape& shape, bool periodic) {
  const std::size_t n = shape.cells();
  if (mask.size() != n) throw std::invalid_argument("label_components: mask size does not match grid");

  ComponentLabels out;
  out.labels.assign(n, -1);
  std::vector<std::size_t> stack;

  for (std::size_t start = 0; start < n; ++start) {
    if (!mask[start] || out.labels[start] >= 0) continue;
    const int label = out.count++;
    out.labels[start] = label;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const int x = shape.x_of(c);
      const int y = shape.y_of(c);
      constexpr int dx[4] = {1, -1, 0, 0};
      constexpr int dy[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int tx = x + dx[k];
        int ty = y + dy[k];
        if (periodic) {
          tx = (tx + shape.nx) % shape.nx;
          ty = (ty + shape.ny) % shape.ny;
        } else if (!shape.contains(tx, ty)) {
          continue;
        }
        const std::size_t t = shape.index(tx, ty);
        if (mask[t] && out.labels[t] < 0) {
          out.labels[t] = label;
          stack.push_back(t);
        }
      }
    }
  }
  return out;
}

}  // namespace foamlb
