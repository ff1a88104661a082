#pragma once

#include <poincare/domain_catalog.hpp>
#include <poincare/geometry.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace poincare {

enum class ChartKind { identity, power };

/// Affine transfer x -> target + factor * (x - source), traversed along the
/// straight segment between x and its image.
struct TransferStage {
  Vec2 source;
  Vec2 target;
  double factor = 1.0;
};

/// One convex piece of the cover and the transfers that carry it, box by
/// box, into the piece holding the center.
struct HomotopyPiece {
  Box box;
  std::vector<TransferStage> stages;
};

struct HomotopyOptions {
  std::optional<Vec2> center;
  /// Contraction factor mu in (0, 1); rejected when too small to land h_1
  /// inside B(z, alpha).
  std::optional<double> contraction;
};

/// Contraction family h : Omega x [0,1] -> Omega with h_0 = id and
/// h_1(Omega) inside B(z, alpha).
///
/// Convex and cusp domains use one conjugated contraction
/// h_s = chart o c_s o chart^{-1}, c_s(w) = (1 - mu s) w + mu s chart^{-1}(z).
/// Box chains (dumbbell, rooms) split [0,1] into D + 1 equal windows: in
/// window l every piece runs its l-th transfer stage toward the center box,
/// and the last window contracts the center box toward z. The map is then
/// continuous in s but only piecewise continuous in x.
class Homotopy {
 public:
  [[nodiscard]] static Homotopy build(const DomainSpec& domain, const HomotopyOptions& options = {});

  /// h_s(x). Throws DomainError when x is outside the domain.
  [[nodiscard]] Vec2 eval(double s, const Vec2& x) const;
  /// d/ds h_s(x); one-sided (from the left) at window junctions.
  [[nodiscard]] Vec2 velocity(double s, const Vec2& x) const;
  /// d_x h_s, analytic.
  [[nodiscard]] Mat2 differential(double s, const Vec2& x) const;
  /// |det d_x h_s|.
  [[nodiscard]] double jacobian(double s, const Vec2& x) const;

  [[nodiscard]] const DomainSpec& domain() const { return domain_; }
  [[nodiscard]] Vec2 center() const { return center_; }
  [[nodiscard]] double ball_radius() const { return alpha_; }
  [[nodiscard]] double contraction() const { return mu_; }
  /// Smallest admissible contraction for this center and radius.
  [[nodiscard]] double min_contraction() const { return mu_min_; }
  [[nodiscard]] ChartKind chart() const { return chart_; }
  [[nodiscard]] const std::vector<HomotopyPiece>& pieces() const { return pieces_; }
  [[nodiscard]] std::size_t piece_of(const Vec2& x) const;
  [[nodiscard]] std::size_t windows() const { return windows_; }
  /// Points on (just inside) the boundary where velocities peak: ray
  /// probes in chart space, or the corners of every piece.
  [[nodiscard]] const std::vector<Vec2>& extremal_points() const { return extremal_; }

  [[nodiscard]] Vec2 to_chart(const Vec2& x) const;
  [[nodiscard]] Vec2 from_chart(const Vec2& w) const;
  [[nodiscard]] Mat2 chart_jacobian(const Vec2& w) const;

 private:
  Homotopy() = default;

  [[nodiscard]] Vec2 run_stages(const HomotopyPiece& piece, double s, const Vec2& x, double* scale) const;
  [[nodiscard]] double window_tau(double s, std::size_t window) const;

  DomainSpec domain_;
  ChartKind chart_ = ChartKind::identity;
  double chart_k_ = 1.0;
  Vec2 center_{0.0, 0.0};
  Vec2 center_chart_{0.0, 0.0};
  double alpha_ = 0.0;
  double mu_ = 0.0;
  double mu_min_ = 0.0;
  std::size_t windows_ = 1;
  std::vector<HomotopyPiece> pieces_;
  std::vector<Vec2> extremal_;
};

/// Arcs gamma_{x,y}(s) = H(x, y, 3s) built from a homotopy: h_{3s}(x), then
/// the segment between h_1(x) and h_1(y), then h_{3-3s}(y) backwards.
struct ArcFamily {
  Homotopy homotopy;
  /// Covering multiplicity of the slice maps (number of pieces).
  int multiplicity = 1;

  [[nodiscard]] static ArcFamily build(const DomainSpec& domain, const HomotopyOptions& options = {});
  [[nodiscard]] const DomainSpec& domain() const { return homotopy.domain(); }
};

enum class Variable { x, y };
enum class JacobianMethod { automatic, analytic, finite_difference };

[[nodiscard]] Vec2 arc_point(const ArcFamily& arcs, const Vec2& x, const Vec2& y, double s);
[[nodiscard]] Vec2 arc_velocity(const ArcFamily& arcs, const Vec2& x, const Vec2& y, double s);

/// |det| of the differential of x -> gamma_{x,y}(s) (Variable::x) or
/// y -> gamma_{x,y}(s). `automatic` is analytic for the identity chart and
/// central differences otherwise.
[[nodiscard]] double arc_jacobian(const ArcFamily& arcs, double s, const Vec2& x, const Vec2& y,
                                  Variable variable, JacobianMethod method = JacobianMethod::automatic);

struct ArcConstants {
  double C_gamma = 0.0;
  double eta = 0.0;
  double lambda = 0.0;
  int M = 1;
  std::size_t n_pairs = 0;
  int s_grid = 0;
  std::uint64_t seed = 0;
  /// sup |(d_x h_s)^{-1}| (operator norm) over the same samples.
  double inverse_differential_max = 0.0;
};

/// Sampled C_gamma = sup |gamma'|, eta = inf of the x-Jacobian on s in
/// [0, 1/2] and the y-Jacobian on [1/2, 1], lambda = sup |det d h_s^{-1}|.
/// Samples are n_pairs random pairs plus all pairs of extremal points, on
/// s_grid uniform values of s with the junctions 1/3 and 2/3 left out.
/// Throws EstimationError when eta <= 1e-14.
[[nodiscard]] ArcConstants estimate_constants(const ArcFamily& arcs, std::size_t n_pairs, int s_grid,
                                              std::uint64_t seed);

/// Counts pairs of distinct samples in the same piece whose h_s images are
/// within `resolution` of each other.
[[nodiscard]] std::size_t injectivity_collisions(const ArcFamily& arcs, double s, std::size_t n,
                                                 std::uint64_t seed, double resolution = 1e-6);

/// Boundary distance of an interior point, by ray marching and bisection
/// over `directions` equally spaced rays.
[[nodiscard]] double boundary_distance(const DomainSpec& domain, const Vec2& p, int directions = 720);

/// Coarse-grid argmax of the boundary distance; ties go to the
/// lexicographically smallest (x, y).
[[nodiscard]] Vec2 deepest_point(const DomainSpec& domain);

}  // namespace poincare
