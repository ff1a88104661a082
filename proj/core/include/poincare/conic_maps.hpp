#pragma once

#include <poincare/domain_catalog.hpp>
#include <poincare/geometry.hpp>

#include <cstdint>
#include <functional>
#include <span>

namespace poincare {

// Conic-structure maps of the quadratic cusp X = {0 <= x <= 1, |y| <= x^2}
// with vertex at the origin and radius 1.

/// Distance-preserving rescaling factor t(x, y) >= 1. Throws DomainError for
/// x <= 0.
[[nodiscard]] double cusp_t(double x, double y);

/// H(x, y) = (t x, t^2 x y). Defined on the sector {x > 0, |y| <= x, |q| <= 1},
/// which contains the cone over S(0,1) ∩ X and is mapped onto B(0,1) ∩ X.
[[nodiscard]] Vec2 cusp_H(const Vec2& q);

/// Closed-form inverse of cusp_H on B(0,1) ∩ X:
/// x = a^2 sqrt((a^2+b^2)/(a^4+b^2)), y = b x / a^2.
[[nodiscard]] Vec2 cusp_H_inv(const Vec2& q);

enum class Direction { forward, inverse };

/// P_k(x, y) = (x, x^(k-1) y), cone {|y| <= x} onto cusp {|y| <= x^k}, and its
/// inverse (a, b / a^(k-1)).
[[nodiscard]] Vec2 power_map(const Vec2& q, double k, Direction direction);

/// Analytic differential of the forward power map.
[[nodiscard]] Mat2 power_map_jacobian(const Vec2& q, double k);

struct ConicMap {
  enum class Kind { paper_cusp, power_simplified };

  Kind kind = Kind::paper_cusp;
  /// Exponent of the target cusp; 2 for paper_cusp.
  double k = 2.0;
  Vec2 vertex{0.0, 0.0};
  double radius = 1.0;

  [[nodiscard]] static ConicMap paper_cusp() { return ConicMap{}; }
  [[nodiscard]] static ConicMap power_simplified(double exponent) {
    return ConicMap{Kind::power_simplified, exponent, Vec2(0.0, 0.0), 1.0};
  }

  [[nodiscard]] Vec2 forward(const Vec2& q) const;
  [[nodiscard]] Vec2 inverse(const Vec2& q) const;
  /// Source region of `forward`.
  [[nodiscard]] bool in_source(const Vec2& q) const;
  /// Image region B(x0, eps) ∩ {|y| <= x^k}, points with x below 1e-8 excluded.
  [[nodiscard]] bool in_image(const Vec2& q) const;
  /// rho_eps(x) = |x - x0| / eps.
  [[nodiscard]] double rho(const Vec2& q) const { return (q - vertex).norm() / radius; }
};

/// r(s, q) = H(s H^{-1}(q) + (1 - s) x0). Throws ValidationError for s outside
/// [0, 1].
[[nodiscard]] Vec2 retraction(const ConicMap& map, double s, const Vec2& q);

using PlanarFn = std::function<Vec2(const Vec2&)>;
using RegionFn = std::function<bool(const Vec2&)>;

/// Maximum over samples of the spectral norm of the central-difference
/// Jacobian with the given step. Samples whose stencil leaves `in_domain`
/// are skipped; EstimationError when all are skipped. An empirical lower
/// bound on the Lipschitz constant.
[[nodiscard]] double lipschitz_estimate(const PlanarFn& map, const RegionFn& in_domain,
                                        std::span<const Vec2> samples, double step);

/// Uniform samples from the cone over S(0,1) ∩ X (|theta| <= asin((sqrt5-1)/2)),
/// restricted to x >= 1e-8.
[[nodiscard]] PointSample sample_cusp_cone(std::size_t n, std::uint64_t seed);

/// Uniform samples from B(0,1) ∩ {|y| < x^k}, x >= 1e-8.
[[nodiscard]] PointSample sample_cusp_ball(const ConicMap& map, std::size_t n, std::uint64_t seed);

struct ConicCertificate {
  double distance_error_max = 0.0;
  double roundtrip_error_max = 0.0;
  double lipschitz_ratio_spread = 0.0;
  double retraction_scaling_error_max = 0.0;
  double membership_excess_max = 0.0;
  /// max |grad t| * x over the cone samples.
  double t_derivative_bound = 0.0;
  std::size_t samples = 0;
};

/// Sampled certification of the paper_cusp map: distance preservation,
/// roundtrips, cusp membership, retraction scaling, and the spread of
/// Lip(r_s)/s over s = 0.1, ..., 1.0.
[[nodiscard]] ConicCertificate certify_cusp(std::size_t n_samples, std::uint64_t seed);

/// Distance error <= 1e-12, roundtrip and retraction scaling <= 1e-10,
/// image inside the cusp to 1e-12, Lipschitz spread <= 10.
[[nodiscard]] bool passes(const ConicCertificate& certificate);

}  // namespace poincare
