#pragma once

#include <array>

#include "foamlb/types.hpp"

namespace foamlb {

struct Rational {
  int num;
  int den;
  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// D2Q9 velocity set. Direction 0 is rest, 1..4 axial, 5..8 diagonal.
struct D2Q9 {
  static constexpr int Q = 9;

  static constexpr std::array<int, Q> ex = {0, 1, 0, -1, 0, 1, -1, -1, 1};
  static constexpr std::array<int, Q> ey = {0, 0, 1, 0, -1, 1, 1, -1, -1};
  static constexpr std::array<Rational, Q> weight_ratio = {
      Rational{4, 9},  Rational{1, 9},  Rational{1, 9},  Rational{1, 9}, Rational{1, 9},
      Rational{1, 36}, Rational{1, 36}, Rational{1, 36}, Rational{1, 36}};
  static constexpr std::array<double, Q> w = {
      4.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0, 1.0 / 9.0,
      1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0};
  static constexpr std::array<int, Q> opposite = {0, 3, 4, 1, 2, 7, 8, 5, 6};

  static constexpr Rational cs2_ratio{1, 3};
  static constexpr double cs2 = 1.0 / 3.0;
  static constexpr double cs4 = cs2 * cs2;

  /// Index of the direction (sx*ex, sy*ey) for sign flips sx, sy in {-1, 1}.
  static constexpr int reflected(int i, bool flip_x, bool flip_y) {
    const int tx = flip_x ? -ex[static_cast<std::size_t>(i)] : ex[static_cast<std::size_t>(i)];
    const int ty = flip_y ? -ey[static_cast<std::size_t>(i)] : ey[static_cast<std::size_t>(i)];
    for (int k = 0; k < Q; ++k) {
      if (ex[static_cast<std::size_t>(k)] == tx && ey[static_cast<std::size_t>(k)] == ty) return k;
    }
    return -1;
  }

  static constexpr Vec2 e(int i) {
    return {static_cast<double>(ex[static_cast<std::size_t>(i)]),
            static_cast<double>(ey[static_cast<std::size_t>(i)])};
  }
};

}  // namespace foamlb
