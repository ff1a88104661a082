#pragma once

#include <poincare/geometry.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace poincare {

enum class Family {
  unit_square,
  rectangle,
  disk,
  power_cusp,
  dumbbell,
  rooms_passages,
  two_squares_disjoint,
};

using Params = std::map<std::string, double>;

/// A bounded open planar region from the model catalog.
///
/// Membership is strict: boundary points are outside. Box-union families
/// (squares, rectangles, dumbbells, rooms) keep their open parts in `parts`;
/// the union of the parts is the domain, and the homotopy construction in
/// homotopy_arcs uses the parts as its convex cover.
struct DomainSpec {
  std::string name;
  Family family = Family::unit_square;
  int dimension = 2;
  Params params;
  Box bbox;
  double area = 0.0;
  /// Standard error of `area`; zero when the area is analytic.
  double area_stderr = 0.0;
  bool area_analytic = true;
  std::vector<Box> parts;
  /// Singular boundary point when the family has one (cusp vertex).
  std::optional<Vec2> tip;

  [[nodiscard]] bool contains(const Vec2& p) const;
  [[nodiscard]] double param(const std::string& key) const;
};

struct PointSample {
  std::vector<Vec2> points;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  /// Number of bbox draws spent to collect `count` points.
  std::size_t trials = 0;
};

struct AreaEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  double acceptance = 0.0;
};

[[nodiscard]] std::vector<std::string> catalog_names();
[[nodiscard]] Family family_from_name(std::string_view name);
[[nodiscard]] std::string_view family_name(Family f);

/// Name of the parameter a family sweep varies ("k", "delta", ...), empty
/// when the family has none.
[[nodiscard]] std::string sweep_parameter(Family f);

/// Builds a catalog member. Missing parameters take the family default;
/// unknown keys or out-of-range values raise ValidationError, unknown names
/// CatalogError.
[[nodiscard]] DomainSpec instantiate(std::string_view name, const Params& params = {});

[[nodiscard]] double area(const DomainSpec& domain);

/// Rejection-sampling estimate of the area over the bounding box.
[[nodiscard]] AreaEstimate monte_carlo_area(const DomainSpec& domain, std::size_t n,
                                            std::uint64_t seed);

/// `n` uniform interior points by rejection over the bounding box.
/// Deterministic in (domain, n, seed). Throws DegenerateDomainError when the
/// acceptance rate falls below 1e-4.
[[nodiscard]] PointSample sample_interior(const DomainSpec& domain, std::size_t n,
                                          std::uint64_t seed);

/// Flood fill over the cells (of side `resolution`) whose centers are inside;
/// true iff they form one 4-connected component.
[[nodiscard]] bool connectivity_check(const DomainSpec& domain, double resolution);

}  // namespace poincare
