#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace foamlb {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }

/// Cell-centred rectangular grid, row-major (x fastest).
struct GridShape {
  int nx = 0;
  int ny = 0;

  constexpr std::size_t cells() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  constexpr std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(x);
  }
  constexpr int x_of(std::size_t c) const { return static_cast<int>(c % static_cast<std::size_t>(nx)); }
  constexpr int y_of(std::size_t c) const { return static_cast<int>(c / static_cast<std::size_t>(nx)); }
  constexpr bool contains(int x, int y) const { return x >= 0 && x < nx && y >= 0 && y < ny; }
  friend constexpr bool operator==(const GridShape&, const GridShape&) = default;
};

enum class BoundaryKind { periodic, mirror };

std::string to_string(BoundaryKind kind);

/// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver did not converge within its cap.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Nucleation could not place all sites.
class PlacementError : public Error {
 public:
  using Error::Error;
};

/// Physical or numerical singularity, e.g. a collapsing Rayleigh bubble.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Too many negative populations; the run cannot continue meaningfully.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string field = {})
      : Error(what), line_(line), field_(std::move(field)) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

class IoError : public Error {
 public:
  IoError(const std::string& what, std::string path) : Error(what + ": " + path), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace foamlb
