#include <poincare/conic_maps.hpp>
#include <poincare/error.hpp>
#include <poincare/homotopy_arcs.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace poincare {
namespace {

constexpr int kProbeDirections = 128;
constexpr double kBallMargin = 0.999;
constexpr double kTransferMargin = 0.9;

Vec2 direction(int i, int n) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  return {std::cos(theta), std::sin(theta)};
}

// Distance along `dir` from an inside `origin` to the first exit of `inside`,
// searched up to `limit`. Returns the last inside parameter (bisected to
// ~1e-15 relative), or `limit` when no exit is found before it.
template <typename Pred>
double ray_exit(const Pred& inside, const Vec2& origin, const Vec2& dir, double step, double limit) {
  double lo = 0.0;
  while (lo < limit) {
    const double hi = std::min(lo + step, limit);
    if (!inside(origin + hi * dir)) {
      double a = lo, b = hi;
      for (int it = 0; it < 60 && b - a > 1e-15 * (1.0 + b); ++it) {
        const double m = 0.5 * (a + b);
        (inside(origin + m * dir) ? a : b) = m;
      }
      return a;
    }
    lo = hi;
  }
  return limit;
}

double diagonal(const Box& b) { return std::hypot(b.width(), b.height()); }

double max_corner_distance(const Box& b, const Vec2& p) {
  double r = 0.0;
  for (const Vec2& c : {b.lo, b.hi, Vec2(b.lo.x(), b.hi.y()), Vec2(b.hi.x(), b.lo.y())}) {
    r = std::max(r, (c - p).norm());
  }
  return r;
}

}  // namespace

double boundary_distance(const DomainSpec& domain, const Vec2& p, int directions) {
  if (!domain.contains(p)) throw DomainError("boundary_distance: point outside the domain");
  const auto inside = [&](const Vec2& q) { return domain.contains(q); };
  const double diag = diagonal(domain.bbox);
  const double step = diag / 1024.0;
  double best = diag;
  for (int i = 0; i < directions; ++i) {
    best = std::min(best, ray_exit(inside, p, direction(i, directions), step, best));
  }
  return best;
}

Vec2 deepest_point(const DomainSpec& domain) {
  const Box& bb = domain.bbox;
  const double base = std::min(bb.width(), bb.height()) / 24.0;
  const int nx = std::max(1, static_cast<int>(std::lround(bb.width() / base)));
  const int ny = std::max(1, static_cast<int>(std::lround(bb.height() / base)));
  Vec2 best_point = domain.bbox.center();
  double best = -1.0;
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      const Vec2 p(bb.lo.x() + bb.width() * i / nx, bb.lo.y() + bb.height() * j / ny);
      if (!domain.contains(p)) continue;
      const double d = boundary_distance(domain, p, 64);
      if (d > best + 1e-9) {
        best = d;
        best_point = p;
      }
    }
  }
  if (best < 0.0) throw ResolutionError("deepest_point: no interior grid node");
  return best_point;
}

Vec2 Homotopy::to_chart(const Vec2& x) const {
  return chart_ == ChartKind::power ? power_map(x, chart_k_, Direction::inverse) : x;
}

Vec2 Homotopy::from_chart(const Vec2& w) const {
  return chart_ == ChartKind::power ? power_map(w, chart_k_, Direction::forward) : w;
}

Mat2 Homotopy::chart_jacobian(const Vec2& w) const {
  return chart_ == ChartKind::power ? power_map_jacobian(w, chart_k_) : Mat2::Identity();
}

Homotopy Homotopy::build(const DomainSpec& domain, const HomotopyOptions& options) {
  if (domain.family == Family::two_squares_disjoint) {
    throw ValidationError("homotopy: domain '" + domain.name + "' is not connected");
  }
  Homotopy h;
  h.domain_ = domain;
  h.center_ = options.center.value_or(deepest_point(domain));
  if (!domain.contains(h.center_)) throw DomainError("homotopy: center outside the domain");
  h.alpha_ = 0.5 * boundary_distance(domain, h.center_);

  const bool chain = domain.family == Family::dumbbell || domain.family == Family::rooms_passages;
  if (!chain) {
    if (domain.family == Family::power_cusp) {
      h.chart_ = ChartKind::power;
      h.chart_k_ = domain.param("k");
    }
    h.pieces_ = {HomotopyPiece{domain.bbox, {}}};
    h.windows_ = 1;
    h.center_chart_ = h.to_chart(h.center_);

    const auto in_chart = [&](const Vec2& w) {
      return (h.chart_ == ChartKind::identity || w.x() > 0.0) && domain.contains(h.from_chart(w));
    };
    const double limit = 4.0 * diagonal(domain.bbox);
    double reach = 0.0;
    for (int i = 0; i < kProbeDirections; ++i) {
      const Vec2 dir = direction(i, kProbeDirections);
      const double r = ray_exit(in_chart, h.center_chart_, dir, limit / 4096.0, limit);
      reach = std::max(reach, r);
      const Vec2 probe = h.from_chart(h.center_chart_ + r * dir);
      if (domain.contains(probe)) h.extremal_.push_back(probe);
    }
    // Lipschitz constant of the chart on its convex image; for the power
    // chart the differential entries peak at the corner (1, +-1).
    const double lip = h.chart_ == ChartKind::power
                           ? spectral_norm(power_map_jacobian(Vec2(1.0, 1.0), h.chart_k_))
                           : 1.0;
    h.mu_min_ = 1.0 - kBallMargin * h.alpha_ / (lip * reach);
  } else {
    const auto& parts = domain.parts;
    const auto n = parts.size();
    std::size_t root = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (parts[i].contains(h.center_)) {
        root = i;
        break;
      }
    }
    std::vector<std::size_t> parent(n, n);
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> frontier;
    frontier.push(root);
    seen[root] = 1;
    while (!frontier.empty()) {
      const std::size_t a = frontier.front();
      frontier.pop();
      for (std::size_t b = 0; b < n; ++b) {
        if (!seen[b] && !intersect(parts[a], parts[b]).empty()) {
          seen[b] = 1;
          parent[b] = a;
          frontier.push(b);
        }
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
      throw ValidationError("homotopy: parts of '" + domain.name + "' do not form a connected cover");
    }

    double reach = 0.0;
    std::size_t depth = 0;
    for (std::size_t j = 0; j < n; ++j) {
      HomotopyPiece piece{parts[j], {}};
      Box current = parts[j];
      for (std::size_t a = j; a != root; a = parent[a]) {
        const Box overlap = intersect(parts[a], parts[parent[a]]);
        const double factor = std::min(
            1.0, kTransferMargin * std::min(overlap.width() / current.width(), overlap.height() / current.height()));
        piece.stages.push_back(TransferStage{current.center(), overlap.center(), factor});
        const Vec2 half = 0.5 * factor * (current.hi - current.lo);
        current = Box{overlap.center() - half, overlap.center() + half};
      }
      reach = std::max(reach, max_corner_distance(current, h.center_));
      depth = std::max(depth, piece.stages.size());
      h.pieces_.push_back(std::move(piece));

      const Vec2 c = parts[j].center();
      for (const Vec2& corner : {parts[j].lo, parts[j].hi, Vec2(parts[j].lo.x(), parts[j].hi.y()),
                                 Vec2(parts[j].hi.x(), parts[j].lo.y())}) {
        const Vec2 probe = c + (1.0 - 1e-9) * (corner - c);
        if (domain.contains(probe)) h.extremal_.push_back(probe);
      }
    }
    h.windows_ = depth + 1;
    h.center_chart_ = h.center_;
    h.mu_min_ = 1.0 - kBallMargin * h.alpha_ / reach;
  }
  h.mu_min_ = std::max(h.mu_min_, 1e-6);

  h.mu_ = options.contraction.value_or(h.mu_min_);
  if (!(h.mu_ > 0.0 && h.mu_ < 1.0)) throw ValidationError("homotopy: contraction must lie in (0, 1)");
  if (h.mu_ < h.mu_min_ - 1e-12) {
    throw ValidationError("homotopy: contraction too small to land h_1 inside B(z, alpha)");
  }
  return h;
}

std::size_t Homotopy::piece_of(const Vec2& x) const {
  if (pieces_.size() == 1) {
    if (!domain_.contains(x)) throw DomainError("homotopy: point outside the domain");
    return 0;
  }
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (pieces_[j].box.contains(x)) return j;
  }
  throw DomainError("homotopy: point outside the domain");
}

double Homotopy::window_tau(double s, std::size_t window) const {
  const double w = static_cast<double>(windows_);
  return std::clamp(s * w - static_cast<double>(window), 0.0, 1.0);
}

Vec2 Homotopy::run_stages(const HomotopyPiece& piece, double s, const Vec2& x, double* scale) const {
  Vec2 p = x;
  double sc = 1.0;
  for (std::size_t l = 0; l < piece.stages.size(); ++l) {
    const double tau = window_tau(s, l);
    if (tau <= 0.0) break;
    const TransferStage& st = piece.stages[l];
    p = (1.0 - tau) * p + tau * (st.target + st.factor * (p - st.source));
    sc *= 1.0 - tau + tau * st.factor;
  }
  if (scale != nullptr) *scale = sc;
  return p;
}

Vec2 Homotopy::eval(double s, const Vec2& x) const {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("homotopy: s must lie in [0, 1]");
  const HomotopyPiece& piece = pieces_[piece_of(x)];
  if (s == 0.0) return x;
  Vec2 p = run_stages(piece, s, x, nullptr);
  const double tau = window_tau(s, windows_ - 1);
  if (tau > 0.0) {
    const Vec2 w = to_chart(p);
    p = from_chart((1.0 - mu_ * tau) * w + mu_ * tau * center_chart_);
  }
  return p;
}

Mat2 Homotopy::differential(double s, const Vec2& x) const {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("homotopy: s must lie in [0, 1]");
  const HomotopyPiece& piece = pieces_[piece_of(x)];
  double scale = 1.0;
  const Vec2 p = run_stages(piece, s, x, &scale);
  const double tau = window_tau(s, windows_ - 1);
  if (chart_ == ChartKind::identity) return (scale * (1.0 - mu_ * tau)) * Mat2::Identity();
  const Vec2 w = to_chart(p);
  const Vec2 moved = (1.0 - mu_ * tau) * w + mu_ * tau * center_chart_;
  return scale * (1.0 - mu_ * tau) * chart_jacobian(moved) * chart_jacobian(w).inverse();
}

double Homotopy::jacobian(double s, const Vec2& x) const { return std::abs(differential(s, x).determinant()); }

Vec2 Homotopy::velocity(double s, const Vec2& x) const {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("homotopy: s must lie in [0, 1]");
  const HomotopyPiece& piece = pieces_[piece_of(x)];
  const double w = static_cast<double>(windows_);
  const auto window = static_cast<std::size_t>(
      std::clamp(std::ceil(s * w) - 1.0, 0.0, w - 1.0));
  if (window + 1 < windows_) {
    if (window >= piece.stages.size()) return Vec2::Zero();
    const Vec2 start = run_stages(piece, static_cast<double>(window) / w, x, nullptr);
    const TransferStage& st = piece.stages[window];
    return w * (st.target + st.factor * (start - st.source) - start);
  }
  const Vec2 p = run_stages(piece, s, x, nullptr);
  const double tau = window_tau(s, windows_ - 1);
  const Vec2 wc = to_chart(p);
  const Vec2 moved = (1.0 - mu_ * tau) * wc + mu_ * tau * center_chart_;
  return w * mu_ * (chart_jacobian(moved) * (center_chart_ - wc));
}

ArcFamily ArcFamily::build(const DomainSpec& domain, const HomotopyOptions& options) {
  Homotopy h = Homotopy::build(domain, options);
  const int m = static_cast<int>(h.pieces().size());
  return ArcFamily{std::move(h), m};
}

Vec2 arc_point(const ArcFamily& arcs, const Vec2& x, const Vec2& y, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("arc_point: s must lie in [0, 1]");
  const Homotopy& h = arcs.homotopy;
  (void)h.piece_of(x);
  (void)h.piece_of(y);
  const double sigma = 3.0 * s;
  if (sigma <= 1.0) return h.eval(sigma, x);
  if (sigma <= 2.0) return (2.0 - sigma) * h.eval(1.0, x) + (sigma - 1.0) * h.eval(1.0, y);
  return h.eval(3.0 - sigma, y);
}

Vec2 arc_velocity(const ArcFamily& arcs, const Vec2& x, const Vec2& y, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("arc_velocity: s must lie in [0, 1]");
  const Homotopy& h = arcs.homotopy;
  const double sigma = 3.0 * s;
  if (sigma <= 1.0) return 3.0 * h.velocity(sigma, x);
  if (sigma <= 2.0) return 3.0 * (h.eval(1.0, y) - h.eval(1.0, x));
  return -3.0 * h.velocity(3.0 - sigma, y);
}

namespace {

double analytic_arc_jacobian(const Homotopy& h, double sigma, const Vec2& x, const Vec2& y, Variable v) {
  if (v == Variable::x) {
    if (sigma <= 1.0) return h.jacobian(sigma, x);
    if (sigma <= 2.0) return (2.0 - sigma) * (2.0 - sigma) * h.jacobian(1.0, x);
    return 0.0;
  }
  if (sigma <= 1.0) return 0.0;
  if (sigma <= 2.0) return (sigma - 1.0) * (sigma - 1.0) * h.jacobian(1.0, y);
  return h.jacobian(3.0 - sigma, y);
}

double fd_arc_jacobian(const ArcFamily& arcs, double s, const Vec2& x, const Vec2& y, Variable v) {
  const DomainSpec& dom = arcs.domain();
  const Vec2& base = v == Variable::x ? x : y;
  double step = 1e-6 * std::max(1.0, base.norm());
  for (int attempt = 0; attempt < 20; ++attempt, step *= 0.5) {
    const Vec2 ex(step, 0.0), ey(0.0, step);
    if (!dom.contains(base + ex) || !dom.contains(base - ex) || !dom.contains(base + ey) ||
        !dom.contains(base - ey)) {
      continue;
    }
    // Stencils that straddle two pieces see the jump of h_s in x.
    const Homotopy& h = arcs.homotopy;
    const std::size_t piece = h.piece_of(base);
    if (h.piece_of(base + ex) != piece || h.piece_of(base - ex) != piece || h.piece_of(base + ey) != piece ||
        h.piece_of(base - ey) != piece) {
      continue;
    }
    const auto gamma = [&](const Vec2& q) {
      return v == Variable::x ? arc_point(arcs, q, y, s) : arc_point(arcs, x, q, s);
    };
    Mat2 jac;
    jac.col(0) = (gamma(base + ex) - gamma(base - ex)) / (2.0 * step);
    jac.col(1) = (gamma(base + ey) - gamma(base - ey)) / (2.0 * step);
    return std::abs(jac.determinant());
  }
  throw DomainError("arc_jacobian: no finite-difference stencil fits inside the domain");
}

}  // namespace

double arc_jacobian(const ArcFamily& arcs, double s, const Vec2& x, const Vec2& y, Variable variable,
                    JacobianMethod method) {
  if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("arc_jacobian: s must lie in [0, 1]");
  (void)arcs.homotopy.piece_of(x);
  (void)arcs.homotopy.piece_of(y);
  if (method == JacobianMethod::automatic) {
    method = arcs.homotopy.chart() == ChartKind::identity ? JacobianMethod::analytic
                                                          : JacobianMethod::finite_difference;
  }
  if (method == JacobianMethod::analytic) return analytic_arc_jacobian(arcs.homotopy, 3.0 * s, x, y, variable);
  return fd_arc_jacobian(arcs, s, x, y, variable);
}

ArcConstants estimate_constants(const ArcFamily& arcs, std::size_t n_pairs, int s_grid, std::uint64_t seed) {
  if (n_pairs < 100) throw ValidationError("estimate_constants: n_pairs must be >= 100");
  if (s_grid < 3) throw ValidationError("estimate_constants: s_grid must be >= 3");
  const Homotopy& h = arcs.homotopy;

  std::vector<double> s_values;
  for (int i = 0; i < s_grid; ++i) {
    const double s = static_cast<double>(i) / (s_grid - 1);
    if (std::abs(3.0 * s - 1.0) < 1e-12 || std::abs(3.0 * s - 2.0) < 1e-12) continue;
    s_values.push_back(s);
  }

  const PointSample sample = sample_interior(arcs.domain(), 2 * n_pairs, seed);
  std::vector<std::pair<Vec2, Vec2>> pairs;
  pairs.reserve(n_pairs + h.extremal_points().size() * h.extremal_points().size());
  for (std::size_t i = 0; i < n_pairs; ++i) pairs.emplace_back(sample.points[2 * i], sample.points[2 * i + 1]);
  for (const Vec2& a : h.extremal_points()) {
    for (const Vec2& b : h.extremal_points()) pairs.emplace_back(a, b);
  }

  ArcConstants out;
  out.M = arcs.multiplicity;
  out.n_pairs = n_pairs;
  out.s_grid = s_grid;
  out.seed = seed;
  out.eta = std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    for (const double s : s_values) {
      out.C_gamma = std::max(out.C_gamma, arc_velocity(arcs, x, y, s).norm());
      if (s <= 0.5) {
        out.eta = std::min(out.eta, analytic_arc_jacobian(h, 3.0 * s, x, y, Variable::x));
      }
      if (s >= 0.5) {
        out.eta = std::min(out.eta, analytic_arc_jacobian(h, 3.0 * s, x, y, Variable::y));
      }
    }
  }

  std::vector<Vec2> points = sample.points;
  points.insert(points.end(), h.extremal_points().begin(), h.extremal_points().end());
  for (const Vec2& x : points) {
    for (const double s : s_values) {
      const Mat2 d = h.differential(s, x);
      out.lambda = std::max(out.lambda, 1.0 / std::abs(d.determinant()));
      out.inverse_differential_max = std::max(out.inverse_differential_max, spectral_norm(d.inverse()));
    }
  }
  if (!(out.eta > 1e-14)) {
    throw EstimationError("estimate_constants: eta vanished on '" + arcs.domain().name + "'");
  }
  return out;
}

std::size_t injectivity_collisions(const ArcFamily& arcs, double s, std::size_t n, std::uint64_t seed,
                                   double resolution) {
  const Homotopy& h = arcs.homotopy;
  const PointSample sample = sample_interior(arcs.domain(), n, seed);
  struct Entry {
    Vec2 image;
    Vec2 origin;
    std::size_t piece;
  };
  std::vector<Entry> entries;
  entries.reserve(n);
  for (const Vec2& p : sample.points) entries.push_back({h.eval(s, p), p, h.piece_of(p)});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.image.x() < b.image.x(); });
  std::size_t collisions = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size() && entries[j].image.x() - entries[i].image.x() <= resolution; ++j) {
      if (entries[i].piece == entries[j].piece && (entries[i].image - entries[j].image).norm() <= resolution &&
          (entries[i].origin - entries[j].origin).norm() > resolution) {
        ++collisions;
      }
    }
  }
  return collisions;
}

}  // namespace poincare
