#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "foamlb/bubbles.hpp"
#include "foamlb/types.hpp"

namespace foamlb {

using FilmKey = std::pair<int, int>;
inline FilmKey film_key(int a, int b) { return a < b ? FilmKey{a, b} : FilmKey{b, a}; }

/// Melt film between two bubbles and its rupture switch. eta only goes 1 -> 0.
struct FilmState {
  FilmKey bubbles{-1, -1};
  int eta = 1;
  bool sampled = false;
  double last_d2p = 0.0;
  double thickness = 0.0;
  long first_contact_step = -1;
  long rupture_step = -1;
  bool forced = false;  ///< ruptured by the thickness floor rather than the curvature test
};

using FilmTable = std::map<FilmKey, FilmState>;

inline bool film_intact(const FilmTable& films, int a, int b) {
  const auto it = films.find(film_key(a, b));
  return it == films.end() || it->second.eta == 1;
}

struct RuptureSettings {
  static constexpr int kProfilePoints = 9;
  double epsilon = 1e-3;        ///< tolerance relative to the pressure scale
  double spacing = 1.0;         ///< sample spacing along the normal, cells
  double min_thickness = 3.0;   ///< films thinner than this rupture unconditionally
};

using PressureProfile = std::array<double, RuptureSettings::kProfilePoints>;

struct FilmGeometry {
  Vec2 midpoint{};
  Vec2 normal{};  ///< unit vector from the first bubble towards the second
  double thickness = 0.0;
};

struct RuptureResult {
  int eta = 1;
  double d2p = 0.0;
  bool forced = false;
  PressureProfile profile{};
};

/// Central second difference at the centre sample of a profile with spacing h.
double centre_second_derivative(const PressureProfile& profile, double h);

/// eta from a sampled profile: 0 when |d2p/dn2| <= epsilon * scale or the film is
/// thinner than the floor, 1 otherwise.
RuptureResult evaluate_profile(const PressureProfile& profile, double thickness, double scale,
                               const RuptureSettings& settings);

/// Walks the segment between the centroids of a and b and returns the melt gap
/// between the last cell owned by a and the first owned by b. Empty when a third
/// bubble lies on the segment or either bubble is not crossed.
std::optional<FilmGeometry> locate_film(const Bubble& a, const Bubble& b, std::span<const int> owner,
                                        const GridShape& shape);

/// Bilinear samples of `field` at midpoint + (k - 4) * spacing * normal, clamped to the grid.
PressureProfile sample_profile(std::span<const double> field, const GridShape& shape, const FilmGeometry& film,
                               double spacing);

RuptureResult detect_rupture(std::span<const double> pressure, const GridShape& shape, const FilmGeometry& film,
                             double scale, const RuptureSettings& settings);

/// Folds a new evaluation into the film's history. A sign change of d2p/dn2
/// between consecutive evaluations counts as passing through zero.
/// Returns true when this call switched eta to 0.
bool update_film(FilmState& film, const RuptureResult& result, long step);

}  // namespace foamlb
