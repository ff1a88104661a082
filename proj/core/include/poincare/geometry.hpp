#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace poincare {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Open axis-aligned rectangle (lo, hi).
struct Box {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{0.0, 0.0};

  [[nodiscard]] bool contains(const Vec2& p) const {
    return p.x() > lo.x() && p.x() < hi.x() && p.y() > lo.y() && p.y() < hi.y();
  }
  [[nodiscard]] double width() const { return hi.x() - lo.x(); }
  [[nodiscard]] double height() const { return hi.y() - lo.y(); }
  [[nodiscard]] double area() const { return width() * height(); }
  [[nodiscard]] Vec2 center() const { return 0.5 * (lo + hi); }
  [[nodiscard]] bool empty() const { return !(width() > 0.0 && height() > 0.0); }
};

[[nodiscard]] inline Box intersect(const Box& a, const Box& b) {
  return Box{a.lo.cwiseMax(b.lo), a.hi.cwiseMin(b.hi)};
}

/// Largest singular value of a 2x2 matrix [[a, b], [c, d]]:
/// (|(a + d, c - b)| + |(a - d, b + c)|) / 2, free of cancellation.
[[nodiscard]] inline double spectral_norm(const Mat2& m) {
  const double p = std::hypot(m(0, 0) + m(1, 1), m(1, 0) - m(0, 1));
  const double q = std::hypot(m(0, 0) - m(1, 1), m(0, 1) + m(1, 0));
  return 0.5 * (p + q);
}

/// splitmix64 step, used to derive independent per-task seeds.
[[nodiscard]] inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace poincare
