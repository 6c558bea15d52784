#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "foamlb/labeling.hpp"

using namespace foamlb;

namespace {

// Recursive flood fill, the simplest correct oracle.
void fill(const std::vector<std::uint8_t>& mask, const GridShape& s, bool periodic, int x, int y, int id,
          std::vector<int>& out) {
  if (periodic) {
    x = (x + s.nx) % s.nx;
    y = (y + s.ny) % s.ny;
  } else if (!s.contains(x, y)) {
    return;
  }
  const std::size_t c = s.index(x, y);
  if (!mask[c] || out[c] >= 0) return;
  out[c] = id;
  fill(mask, s, periodic, x + 1, y, id, out);
  fill(mask, s, periodic, x - 1, y, id, out);
  fill(mask, s, periodic, x, y + 1, id, out);
  fill(mask, s, periodic, x, y - 1, id, out);
}

std::pair<std::vector<int>, int> oracle(const std::vector<std::uint8_t>& mask, const GridShape& s, bool periodic) {
  std::vector<int> out(s.cells(), -1);
  int count = 0;
  for (std::size_t c = 0; c < s.cells(); ++c) {
    if (mask[c] && out[c] < 0) fill(mask, s, periodic, s.x_of(c), s.y_of(c), count++, out);
  }
  return {out, count};
}

}  // namespace

TEST_CASE("labeling matches flood fill on random grids") {
  const GridShape s{10, 10};
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution coin(0.45);
  for (bool periodic : {false, true}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::uint8_t> mask(s.cells());
      for (auto& m : mask) m = coin(rng) ? 1 : 0;
      const auto got = label_components(mask, s, periodic);
      const auto [want, count] = oracle(mask, s, periodic);
      CHECK(got.count == count);
      CHECK(got.labels == want);
    }
  }
}

TEST_CASE("labeling edge cases") {
  const GridShape s{4, 3};
  const std::vector<std::uint8_t> none(s.cells(), 0), all(s.cells(), 1);
  CHECK(label_components(none, s).count == 0);
  CHECK(label_components(all, s).count == 1);
  // Diagonal neighbours are separate components.
  std::vector<std::uint8_t> diag(s.cells(), 0);
  diag[s.index(0, 0)] = 1;
  diag[s.index(1, 1)] = 1;
  CHECK(label_components(diag, s).count == 2);
  // Opposite edges join only when periodic.
  std::vector<std::uint8_t> wrap(s.cells(), 0);
  wrap[s.index(0, 1)] = 1;
  wrap[s.index(3, 1)] = 1;
  CHECK(label_components(wrap, s, false).count == 2);
  CHECK(label_components(wrap, s, true).count == 1);
}
