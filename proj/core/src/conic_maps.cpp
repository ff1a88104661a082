#include <poincare/conic_maps.hpp>
#include <poincare/error.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace poincare {
namespace {

constexpr double kTipCut = 1e-8;
constexpr double kSlack = 1e-12;

}  // namespace

double cusp_t(double x, double y) {
  if (!(x > 0.0)) throw DomainError("cusp_t: requires x > 0");
  const double x2 = x * x, y2 = y * y;
  const double r2 = x2 + y2;
  return std::sqrt(2.0 * r2 / (x2 + std::sqrt(x2 * x2 + 4.0 * x2 * y2 * r2)));
}

Vec2 cusp_H(const Vec2& q) {
  const double x = q.x(), y = q.y();
  if (!(x > 0.0) || std::abs(y) > x * (1.0 + kSlack) || q.norm() > 1.0 + kSlack) {
    throw DomainError("cusp_H: point outside the cone sector");
  }
  const double t = cusp_t(x, y);
  return {t * x, t * t * x * y};
}

Vec2 cusp_H_inv(const Vec2& q) {
  const double a = q.x(), b = q.y();
  if (!(a > 0.0) || std::abs(b) > a * a * (1.0 + kSlack)) {
    throw DomainError("cusp_H_inv: point outside the cusp");
  }
  const double a2 = a * a, b2 = b * b;
  const double x = a2 * std::sqrt((a2 + b2) / (a2 * a2 + b2));
  return {x, b * x / a2};
}

Vec2 power_map(const Vec2& q, double k, Direction direction) {
  if (!(q.x() > 0.0)) throw DomainError("power_map: first coordinate must be positive");
  const double scale = std::pow(q.x(), k - 1.0);
  if (direction == Direction::forward) return {q.x(), scale * q.y()};
  return {q.x(), q.y() / scale};
}

Mat2 power_map_jacobian(const Vec2& q, double k) {
  if (!(q.x() > 0.0)) throw DomainError("power_map: first coordinate must be positive");
  Mat2 j;
  j << 1.0, 0.0, (k - 1.0) * std::pow(q.x(), k - 2.0) * q.y(), std::pow(q.x(), k - 1.0);
  return j;
}

Vec2 ConicMap::forward(const Vec2& q) const {
  const Vec2 local = (q - vertex) / radius;
  const Vec2 out = kind == Kind::paper_cusp ? cusp_H(local) : power_map(local, k, Direction::forward);
  return vertex + radius * out;
}

Vec2 ConicMap::inverse(const Vec2& q) const {
  const Vec2 local = (q - vertex) / radius;
  const Vec2 out = kind == Kind::paper_cusp ? cusp_H_inv(local) : power_map(local, k, Direction::inverse);
  return vertex + radius * out;
}

bool ConicMap::in_source(const Vec2& q) const {
  const Vec2 local = (q - vertex) / radius;
  if (local.x() < kTipCut || std::abs(local.y()) > local.x()) return false;
  return kind == Kind::power_simplified || local.norm() <= 1.0;
}

bool ConicMap::in_image(const Vec2& q) const {
  const Vec2 local = (q - vertex) / radius;
  if (local.x() < kTipCut || local.norm() > 1.0) return false;
  if (kind == Kind::power_simplified && local.x() > 1.0) return false;
  return std::abs(local.y()) <= std::pow(local.x(), k);
}

Vec2 retraction(const ConicMap& map, double s, const Vec2& q) {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("retraction: s must lie in [0, 1]");
  if (s == 1.0) return q;
  if (s == 0.0) return map.vertex;
  const Vec2 pre = map.inverse(q);
  return map.forward(s * pre + (1.0 - s) * map.vertex);
}

double lipschitz_estimate(const PlanarFn& map, const RegionFn& in_domain, std::span<const Vec2> samples,
                          double step) {
  if (!(step > 0.0)) throw ValidationError("lipschitz_estimate: step must be positive");
  double best = 0.0;
  std::size_t used = 0;
  const Vec2 ex(step, 0.0), ey(0.0, step);
  for (const Vec2& q : samples) {
    if (!in_domain(q) || !in_domain(q + ex) || !in_domain(q - ex) || !in_domain(q + ey) ||
        !in_domain(q - ey)) {
      continue;
    }
    Mat2 jac;
    jac.col(0) = (map(q + ex) - map(q - ex)) / (2.0 * step);
    jac.col(1) = (map(q + ey) - map(q - ey)) / (2.0 * step);
    best = std::max(best, spectral_norm(jac));
    ++used;
  }
  if (used == 0) throw EstimationError("lipschitz_estimate: every sample left the domain");
  return best;
}

PointSample sample_cusp_cone(std::size_t n, std::uint64_t seed) {
  const double slope_sin = (std::sqrt(5.0) - 1.0) / 2.0;
  PointSample out;
  out.seed = seed;
  out.count = n;
  out.points.reserve(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uy(-slope_sin, slope_sin);
  while (out.points.size() < n) {
    const Vec2 q(ux(rng), uy(rng));
    ++out.trials;
    const double r = q.norm();
    if (q.x() >= kTipCut && r <= 1.0 && std::abs(q.y()) <= slope_sin * r) out.points.push_back(q);
  }
  return out;
}

PointSample sample_cusp_ball(const ConicMap& map, std::size_t n, std::uint64_t seed) {
  PointSample out;
  out.seed = seed;
  out.count = n;
  out.points.reserve(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uy(-1.0, 1.0);
  while (out.points.size() < n) {
    const Vec2 q = map.vertex + map.radius * Vec2(ux(rng), uy(rng));
    ++out.trials;
    if (map.in_image(q)) out.points.push_back(q);
  }
  return out;
}

ConicCertificate certify_cusp(std::size_t n_samples, std::uint64_t seed) {
  const ConicMap map = ConicMap::paper_cusp();
  ConicCertificate cert;
  cert.samples = n_samples;

  const PointSample cone = sample_cusp_cone(n_samples, split_seed(seed, 0));
  for (const Vec2& q : cone.points) {
    const Vec2 img = cusp_H(q);
    cert.distance_error_max = std::max(cert.distance_error_max, std::abs(img.norm() - q.norm()));
    cert.membership_excess_max = std::max(cert.membership_excess_max, std::abs(img.y()) - img.x() * img.x());
    cert.roundtrip_error_max = std::max(cert.roundtrip_error_max, (cusp_H_inv(img) - q).norm());

    constexpr double dt = 1e-7;
    const double dtx = (cusp_t(q.x() + dt, q.y()) - cusp_t(q.x() - std::min(dt, 0.5 * q.x()), q.y())) /
                       (dt + std::min(dt, 0.5 * q.x()));
    const double dty = (cusp_t(q.x(), q.y() + dt) - cusp_t(q.x(), q.y() - dt)) / (2.0 * dt);
    cert.t_derivative_bound = std::max(cert.t_derivative_bound, std::hypot(dtx, dty) * q.x());
  }

  const PointSample ball = sample_cusp_ball(map, n_samples, split_seed(seed, 1));
  std::mt19937_64 rng(split_seed(seed, 2));
  std::uniform_real_distribution<double> us(0.0, 1.0);
  for (const Vec2& q : ball.points) {
    cert.roundtrip_error_max = std::max(cert.roundtrip_error_max, (cusp_H(cusp_H_inv(q)) - q).norm());
    const double s = us(rng);
    const Vec2 r = retraction(map, s, q);
    cert.retraction_scaling_error_max = std::max(cert.retraction_scaling_error_max, std::abs(r.norm() - s * q.norm()));
  }

  // Lip(r_s)/s over the s-grid; one shared sample set keeps the ratio honest.
  const std::size_t n_lip = std::min<std::size_t>(n_samples, 20000);
  const std::span<const Vec2> lip_samples(ball.points.data(), n_lip);
  const auto in_ball = [&](const Vec2& q) { return map.in_image(q); };
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double s = 0.1 * i;
    const auto r_s = [&](const Vec2& q) { return retraction(map, s, q); };
    const double ratio = lipschitz_estimate(r_s, in_ball, lip_samples, 1e-6) / s;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  cert.lipschitz_ratio_spread = hi / lo;
  return cert;
}

bool passes(const ConicCertificate& c) {
  return c.samples > 0 && c.distance_error_max <= 1e-12 && c.roundtrip_error_max <= 1e-10 &&
         c.retraction_scaling_error_max <= 1e-10 && c.membership_excess_max <= 1e-12 &&
         c.lipschitz_ratio_spread <= 10.0;
}

}  // namespace poincare
