#include "foamlb/rupture.hpp"

#include <algorithm>
#include <cmath>

namespace foamlb {

double centre_second_derivative(const PressureProfile& profile, double h) {
  constexpr int mid = RuptureSettings::kProfilePoints / 2;
  return (profile[mid + 1] - 2.0 * profile[mid] + profile[mid - 1]) / (h * h);
}

RuptureResult evaluate_profile(const PressureProfile& profile, double thickness, double scale,
                               const RuptureSettings& settings) {
  RuptureResult r;
  r.profile = profile;
  r.d2p = centre_second_derivative(profile, settings.spacing);
  if (thickness < settings.min_thickness) {
    r.eta = 0;
    r.forced = true;
    return r;
  }
  r.eta = std::abs(r.d2p) <= settings.epsilon * scale ? 0 : 1;
  return r;
}

std::optional<FilmGeometry> locate_film(const Bubble& a, const Bubble& b, std::span<const int> owner,
                                        const GridShape& shape) {
  const Vec2 delta = b.centroid - a.centroid;
  const double length = norm(delta);
  if (length == 0.0) return std::nullopt;
  const Vec2 dir = delta * (1.0 / length);

  constexpr double kStep = 0.25;
  const int samples = static_cast<int>(std::ceil(length / kStep));
  double last_a = -1.0;
  double first_b = -1.0;
  for (int k = 0; k <= samples; ++k) {
    const double t = std::min(k * kStep, length);
    const Vec2 p = a.centroid + dir * t;
    const int x = static_cast<int>(std::lround(p.x));
    const int y = static_cast<int>(std::lround(p.y));
    if (!shape.contains(x, y)) continue;
    const int id = owner[shape.index(x, y)];
    if (id == a.id && first_b < 0.0) {
      last_a = t;
    } else if (id == b.id) {
      first_b = t;
      break;
    } else if (id >= 0 && last_a >= 0.0) {
      return std::nullopt;  // another bubble sits in between
    }
  }
  if (last_a < 0.0 || first_b < 0.0) return std::nullopt;

  FilmGeometry g;
  g.normal = dir;
  g.midpoint = a.centroid + dir * (0.5 * (last_a + first_b));
  // Each edge lies within one sample step of its bracketing samples; take the middle.
  g.thickness = std::max(0.0, first_b - last_a - kStep);
  return g;
}

namespace {

double bilinear(std::span<const double> field, const GridShape& shape, Vec2 p) {
  const double x = std::clamp(p.x, 0.0, static_cast<double>(shape.nx - 1));
  const double y = std::clamp(p.y, 0.0, static_cast<double>(shape.ny - 1));
  const int x0 = std::min(static_cast<int>(std::floor(x)), shape.nx - 1);
  const int y0 = std::min(static_cast<int>(std::floor(y)), shape.ny - 1);
  const int x1 = std::min(x0 + 1, shape.nx - 1);
  const int y1 = std::min(y0 + 1, shape.ny - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double v00 = field[shape.index(x0, y0)];
  const double v10 = field[shape.index(x1, y0)];
  const double v01 = field[shape.index(x0, y1)];
  const double v11 = field[shape.index(x1, y1)];
  return (1.0 - fx) * (1.0 - fy) * v00 + fx * (1.0 - fy) * v10 + (1.0 - fx) * fy * v01 + fx * fy * v11;
}

}  // namespace

PressureProfile sample_profile(std::span<const double> field, const GridShape& shape, const FilmGeometry& film,
                               double spacing) {
  PressureProfile out{};
  constexpr int mid = RuptureSettings::kProfilePoints / 2;
  for (int k = 0; k < RuptureSettings::kProfilePoints; ++k) {
    out[k] = bilinear(field, shape, film.midpoint + film.normal * ((k - mid) * spacing));
  }
  return out;
}

RuptureResult detect_rupture(std::span<const double> pressure, const GridShape& shape, const FilmGeometry& film,
                             double scale, const RuptureSettings& settings) {
  return evaluate_profile(sample_profile(pressure, shape, film, settings.spacing), film.thickness, scale, settings);
}

bool update_film(FilmState& film, const RuptureResult& result, long step) {
  if (film.eta == 0) return false;
  const bool crossed = film.sampled && result.d2p != 0.0 && film.last_d2p != 0.0 &&
                       std::signbit(result.d2p) != std::signbit(film.last_d2p);
  film.sampled = true;
  film.last_d2p = result.d2p;
  if (result.eta == 0 || crossed) {
    film.eta = 0;
    film.rupture_step = step;
    film.forced = result.forced;
    return true;
  }
  return false;
}

}  // namespace foamlb
