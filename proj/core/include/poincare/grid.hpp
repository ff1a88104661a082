#pragma once

#include <poincare/domain_catalog.hpp>
#include <poincare/geometry.hpp>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace poincare {

/// Uniform Cartesian grid over the domain's bounding box. A cell is active
/// iff its center is inside; only nodes of active cells are kept. Discrete
/// functions are bilinear (Q1) on the active cells, so the grid is the
/// staircase union of its active cells.
struct Grid {
  DomainSpec domain;
  double h = 0.0;
  Vec2 origin{0.0, 0.0};
  int nx = 0;
  int ny = 0;
  std::vector<Vec2> nodes;
  /// Lattice index (i, j) of each node.
  std::vector<std::array<int, 2>> node_lattice;
  /// Corner nodes of each active cell, counterclockwise from (i, j).
  std::vector<std::array<int, 4>> cells;
  std::vector<Vec2> cell_centers;

  [[nodiscard]] std::size_t node_count() const { return nodes.size(); }
  [[nodiscard]] std::size_t cell_count() const { return cells.size(); }
  [[nodiscard]] double cell_measure() const { return h * h; }
  [[nodiscard]] double active_area() const { return cell_measure() * static_cast<double>(cells.size()); }
  /// Number of node-connected components of the active cells.
  [[nodiscard]] std::size_t components() const;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws ResolutionError when no cell center is inside.
[[nodiscard]] GridPtr build_grid(const DomainSpec& domain, double h);

/// Nodal values on a grid.
struct DiscreteFunction {
  GridPtr grid;
  Eigen::VectorXd values;

  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(values.size()); }
};

[[nodiscard]] DiscreteFunction interpolate(const GridPtr& grid, const std::function<double(const Vec2&)>& f);

/// Area-weighted average of cell-center values; exact mean of the bilinear
/// interpolant.
[[nodiscard]] double mean_value(const DiscreteFunction& u);

struct Seminorms {
  double dev_norm = 0.0;   ///< |u - mean(u)|_p
  double grad_norm = 0.0;  ///< |grad u|_p
};

/// L^p norms of u - mean(u) and |grad u| for the bilinear interpolant,
/// integrated with the 2x2 Gauss rule on every active cell (exact for p=2).
[[nodiscard]] Seminorms lp_seminorms(const DiscreteFunction& u, double p);

/// dev_norm / grad_norm, 0 when both vanish, +inf when only the gradient does.
[[nodiscard]] double poincare_ratio(const DiscreteFunction& u, double p);

/// Q1 stiffness and consistent mass matrices of the active cells.
[[nodiscard]] Eigen::SparseMatrix<double> assemble_stiffness(const Grid& grid);
[[nodiscard]] Eigen::SparseMatrix<double> assemble_mass(const Grid& grid);

/// Nodal weights w with mean(u) = w . u.
[[nodiscard]] Eigen::VectorXd mean_weights(const Grid& grid);

/// Values of the four bilinear shape functions and their reference
/// gradients (per unit cell size) at the 2x2 Gauss points. Row = Gauss
/// point, column = local node.
struct GaussTable {
  Eigen::Matrix4d value;
  Eigen::Matrix4d dx;
  Eigen::Matrix4d dy;
};
[[nodiscard]] const GaussTable& gauss_table();

}  // namespace poincare
