#include <poincare/error.hpp>
#include <poincare/grid.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace poincare {

const GaussTable& gauss_table() {
  static const GaussTable table = [] {
    GaussTable t;
    const double g = 0.5 / std::sqrt(3.0);
    const std::array<std::array<double, 2>, 4> pts{{{0.5 - g, 0.5 - g}, {0.5 + g, 0.5 - g}, {0.5 + g, 0.5 + g}, {0.5 - g, 0.5 + g}}};
    for (int q = 0; q < 4; ++q) {
      const double x = pts[q][0], y = pts[q][1];
      t.value.row(q) << (1 - x) * (1 - y), x * (1 - y), x * y, (1 - x) * y;
      t.dx.row(q) << -(1 - y), (1 - y), y, -y;
      t.dy.row(q) << -(1 - x), -x, x, (1 - x);
    }
    return t;
  }();
  return table;
}

GridPtr build_grid(const DomainSpec& domain, double h) {
  if (!(h > 0.0)) throw ValidationError("build_grid: h must be positive");
  auto grid = std::make_shared<Grid>();
  grid->domain = domain;
  grid->h = h;
  grid->origin = domain.bbox.lo;
  grid->nx = static_cast<int>(std::ceil(domain.bbox.width() / h - 1e-9));
  grid->ny = static_cast<int>(std::ceil(domain.bbox.height() / h - 1e-9));

  const int stride = grid->ny + 1;
  std::vector<int> node_id(static_cast<std::size_t>(grid->nx + 1) * stride, -1);
  const auto node = [&](int i, int j) {
    int& id = node_id[static_cast<std::size_t>(i) * stride + j];
    if (id < 0) {
      id = static_cast<int>(grid->nodes.size());
      grid->nodes.emplace_back(grid->origin + h * Vec2(i, j));
      grid->node_lattice.push_back({i, j});
    }
    return id;
  };
  for (int j = 0; j < grid->ny; ++j) {
    for (int i = 0; i < grid->nx; ++i) {
      const Vec2 c = grid->origin + h * Vec2(i + 0.5, j + 0.5);
      if (!domain.contains(c)) continue;
      grid->cells.push_back({node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)});
      grid->cell_centers.push_back(c);
    }
  }
  if (grid->cells.empty()) throw ResolutionError("build_grid: no cell center inside '" + domain.name + "'");
  return grid;
}

std::size_t Grid::components() const {
  std::vector<int> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& c : cells) {
    for (int k = 1; k < 4; ++k) parent[find(c[k])] = find(c[0]);
  }
  std::size_t roots = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) roots += find(static_cast<int>(i)) == static_cast<int>(i);
  return roots;
}

DiscreteFunction interpolate(const GridPtr& grid, const std::function<double(const Vec2&)>& f) {
  DiscreteFunction u{grid, Eigen::VectorXd(static_cast<Eigen::Index>(grid->node_count()))};
  for (std::size_t i = 0; i < grid->node_count(); ++i) u.values[static_cast<Eigen::Index>(i)] = f(grid->nodes[i]);
  return u;
}

Eigen::VectorXd mean_weights(const Grid& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.node_count()));
  const double share = 0.25 / static_cast<double>(grid.cell_count());
  for (const auto& c : grid.cells) {
    for (int k = 0; k < 4; ++k) w[c[k]] += share;
  }
  return w;
}

double mean_value(const DiscreteFunction& u) {
  const Grid& g = *u.grid;
  double sum = 0.0;
  for (const auto& c : g.cells) {
    sum += 0.25 * (u.values[c[0]] + u.values[c[1]] + u.values[c[2]] + u.values[c[3]]);
  }
  return sum / static_cast<double>(g.cell_count());
}

namespace {

double power(double base, double p) {
  if (p == 2.0) return base * base;
  if (p == 1.0) return base;
  if (p == 3.0) return base * base * base;
  return std::pow(base, p);
}

}  // namespace

Seminorms lp_seminorms(const DiscreteFunction& u, double p) {
  if (!(p >= 1.0)) throw ValidationError("lp_seminorms: p must be >= 1");
  const Grid& g = *u.grid;
  const GaussTable& gt = gauss_table();
  const double mean = mean_value(u);
  const double weight = 0.25 * g.cell_measure();
  double dev = 0.0, grad = 0.0;
  Eigen::Vector4d local;
  for (const auto& c : g.cells) {
    local << u.values[c[0]], u.values[c[1]], u.values[c[2]], u.values[c[3]];
    const Eigen::Vector4d v = gt.value * local;
    // Shifting by the first corner makes constants have exactly zero gradient.
    local.array() -= local[0];
    const Eigen::Vector4d gx = gt.dx * local / g.h;
    const Eigen::Vector4d gy = gt.dy * local / g.h;
    for (int q = 0; q < 4; ++q) {
      dev += power(std::abs(v[q] - mean), p);
      grad += power(std::sqrt(gx[q] * gx[q] + gy[q] * gy[q]), p);
    }
  }
  return {std::pow(weight * dev, 1.0 / p), std::pow(weight * grad, 1.0 / p)};
}

double poincare_ratio(const DiscreteFunction& u, double p) {
  const Seminorms n = lp_seminorms(u, p);
  if (n.grad_norm == 0.0) return n.dev_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return n.dev_norm / n.grad_norm;
}

namespace {

Eigen::SparseMatrix<double> assemble(const Grid& grid, const Eigen::Matrix4d& element) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(16 * grid.cell_count());
  for (const auto& c : grid.cells) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) triplets.emplace_back(c[a], c[b], element(a, b));
    }
  }
  const auto n = static_cast<Eigen::Index>(grid.node_count());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_stiffness(const Grid& grid) {
  Eigen::Matrix4d k;
  k << 4, -1, -2, -1,
      -1, 4, -1, -2,
      -2, -1, 4, -1,
      -1, -2, -1, 4;
  return assemble(grid, k / 6.0);
}

Eigen::SparseMatrix<double> assemble_mass(const Grid& grid) {
  Eigen::Matrix4d m;
  m << 4, 2, 1, 2,
      2, 4, 2, 1,
      1, 2, 4, 2,
      2, 1, 2, 4;
  return assemble(grid, m * (grid.cell_measure() / 36.0));
}

}  // namespace poincare
