#include <poincare/error.hpp>
#include <poincare/estimators.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <random>

namespace poincare {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::eigen: return "eigen";
    case Method::rayleigh: return "rayleigh";
    case Method::constructive: return "constructive";
  }
  return "eigen";
}

Method method_from_name(std::string_view name) {
  if (name == "eigen") return Method::eigen;
  if (name == "rayleigh") return Method::rayleigh;
  if (name == "constructive") return Method::constructive;
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

double EstimateResult::diagnostic(std::string_view key) const {
  for (const auto& [k, v] : diagnostics) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double holder_conjugate(double p) {
  if (!(p >= 1.0)) throw ValidationError("p must be >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Factor = Eigen::SimplicialLDLT<SpMat>;

void factorize(Factor& solver, const SpMat& k, const SpMat& m, double shift) {
  const SpMat a = k + shift * m;
  solver.compute(a);
  if (solver.info() != Eigen::Success) throw SolverError("factorization of K + shift M failed");
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& y) {
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

EstimateResult neumann_optimal_constant(const GridPtr& grid, const EigenOptions& options) {
  const Grid& g = *grid;
  if (g.components() > 1) {
    throw SolverError("multiple zero eigenvalues: grid on '" + g.domain.name + "' has " +
                      std::to_string(g.components()) + " components");
  }
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const int block = static_cast<int>(std::min<Eigen::Index>(options.block, n - 1));
  if (block < 1) throw SolverError("grid too small for an eigenvalue estimate");

  const SpMat k = assemble_stiffness(g);
  const SpMat m = assemble_mass(g);
  Factor solver;
  factorize(solver, k, m, options.shift);

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd m_ones = m * ones;
  const double total = ones.dot(m_ones);
  const auto deflate = [&](Eigen::MatrixXd& y) {
    for (Eigen::Index c = 0; c < y.cols(); ++c) y.col(c) -= (m_ones.dot(y.col(c)) / total) * ones;
  };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd q(n, block);
  for (Eigen::Index c = 0; c < block; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) q(r, c) = normal(rng);
  }
  deflate(q);
  q = orthonormal_columns(q);

  double lambda = 0.0, lambda2 = 0.0, residual = std::numeric_limits<double>::infinity();
  int iteration = 0;
  Eigen::VectorXd v;
  while (iteration < options.max_iterations) {
    ++iteration;
    Eigen::MatrixXd y = solver.solve(m * q);
    deflate(y);
    q = orthonormal_columns(y);
    Eigen::MatrixXd kq = q.transpose() * (k * q);
    Eigen::MatrixXd mq = q.transpose() * (m * q);
    kq = 0.5 * (kq + kq.transpose()).eval();
    mq = 0.5 * (mq + mq.transpose()).eval();
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ritz(kq, mq);
    if (ritz.info() != Eigen::Success) throw SolverError("Rayleigh-Ritz step failed");
    q = q * ritz.eigenvectors();
    lambda = ritz.eigenvalues()(0);
    lambda2 = block > 1 ? ritz.eigenvalues()(1) : lambda;
    v = q.col(0);
    const Eigen::VectorXd mv = m * v;
    residual = (k * v - lambda * mv).norm() / mv.norm();
    if (residual <= options.target) break;
  }
  if (!(lambda > 1e-12)) throw SolverError("multiple zero eigenvalues: deflated spectrum starts at zero");
  if (!(residual <= options.tolerance)) {
    throw SolverError("eigen solver did not converge: residual " + std::to_string(residual) + " after " +
                      std::to_string(iteration) + " iterations");
  }

  Eigen::Index peak = 0;
  v.cwiseAbs().maxCoeff(&peak);
  v /= v[peak];

  EstimateResult result;
  result.method = Method::eigen;
  result.p = 2.0;
  result.h = g.h;
  result.seed = options.seed;
  result.witness = DiscreteFunction{grid, v};
  result.constant = poincare_ratio(*result.witness, 2.0);
  const double spectral = 1.0 / std::sqrt(lambda);
  result.diagnostics = {
      {"lambda1", lambda},
      {"lambda2_ritz", lambda2},
      {"residual", residual},
      {"iterations", static_cast<double>(iteration)},
      {"spectral_constant", spectral},
      {"self_consistency", std::abs(result.constant - spectral)},
      {"nodes", static_cast<double>(n)},
      {"cells", static_cast<double>(g.cell_count())},
      {"seed", static_cast<double>(options.seed)},
  };
  return result;
}

EstimateResult neumann_optimal_constant(const Grid& grid, const EigenOptions& options) {
  return neumann_optimal_constant(std::make_shared<const Grid>(grid), options);
}

namespace {

/// Smoothed p-th power and its derivative factor: value (z^2 + e^2)^{p/2},
/// slope p (z^2 + e^2)^{p/2 - 1} (multiply by z for the derivative).
struct PowerTerm {
  double p;
  double operator()(double z2, double e2, double* slope) const {
    const double base = z2 + e2;
    if (p == 2.0) {
      *slope = 2.0;
      return base;
    }
    double value = 0.0;
    if (p == 1.0) {
      value = std::sqrt(base);
    } else if (p == 3.0) {
      value = base * std::sqrt(base);
    } else {
      value = std::pow(base, 0.5 * p);
    }
    *slope = base > 0.0 ? p * value / base : 0.0;
    return value;
  }
};

class RatioObjective {
 public:
  RatioObjective(const Grid& grid, double p, double smoothing)
      : grid_(grid), p_(p), smoothing_(p < 2.0 ? smoothing : 0.0), weights_(mean_weights(grid)) {}

  [[nodiscard]] double mean(const Eigen::VectorXd& u) const { return weights_.dot(u); }

  /// Gradient of log(dev / grad) in nodal coordinates.
  [[nodiscard]] Eigen::VectorXd log_gradient(const Eigen::VectorXd& u) const {
    const GaussTable& gt = gauss_table();
    const double m = mean(u);
    double dev_scale = 0.0, grad_scale = 0.0;
    if (smoothing_ > 0.0) {
      for (const auto& c : grid_.cells) {
        const Eigen::Vector4d l(u[c[0]], u[c[1]], u[c[2]], u[c[3]]);
        dev_scale = std::max(dev_scale, (gt.value * l).array().abs().maxCoeff() + std::abs(m));
        grad_scale = std::max(grad_scale, std::max((gt.dx * l).cwiseAbs().maxCoeff(), (gt.dy * l).cwiseAbs().maxCoeff()));
      }
      dev_scale *= smoothing_;
      grad_scale *= smoothing_ / grid_.h;
    }
    const double e_dev = dev_scale * dev_scale, e_grad = grad_scale * grad_scale;
    const PowerTerm term{p_};

    const auto n = u.size();
    Eigen::VectorXd d_dev = Eigen::VectorXd::Zero(n), d_grad = Eigen::VectorXd::Zero(n);
    double dev = 0.0, grad = 0.0, dev_total_slope = 0.0;
    for (const auto& c : grid_.cells) {
      const Eigen::Vector4d l(u[c[0]], u[c[1]], u[c[2]], u[c[3]]);
      const Eigen::Vector4d v = gt.value * l;
      const Eigen::Vector4d gx = gt.dx * l / grid_.h;
      const Eigen::Vector4d gy = gt.dy * l / grid_.h;
      Eigen::Vector4d local_dev = Eigen::Vector4d::Zero(), local_grad = Eigen::Vector4d::Zero();
      for (int qp = 0; qp < 4; ++qp) {
        const double a = v[qp] - m;
        double slope = 0.0;
        dev += term(a * a, e_dev, &slope);
        local_dev += slope * a * gt.value.row(qp).transpose();
        dev_total_slope += slope * a;
        grad += term(gx[qp] * gx[qp] + gy[qp] * gy[qp], e_grad, &slope);
        local_grad += slope * (gx[qp] * gt.dx.row(qp).transpose() + gy[qp] * gt.dy.row(qp).transpose()) / grid_.h;
      }
      for (int a = 0; a < 4; ++a) {
        d_dev[c[a]] += local_dev[a];
        d_grad[c[a]] += local_grad[a];
      }
    }
    d_dev -= dev_total_slope * weights_;
    // The quadrature weight cancels in both quotients.
    return (d_dev / dev - d_grad / grad) / p_;
  }

 private:
  const Grid& grid_;
  double p_;
  double smoothing_;
  Eigen::VectorXd weights_;
};

double ratio_of(const GridPtr& grid, const Eigen::VectorXd& u, double p) {
  return poincare_ratio(DiscreteFunction{grid, u}, p);
}

Eigen::VectorXd random_start(const Grid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  constexpr int modes = 4;
  double coeff[modes][modes];
  for (auto& row : coeff) {
    for (double& c : row) c = normal(rng);
  }
  const Box& box = grid.domain.bbox;
  Eigen::VectorXd u(static_cast<Eigen::Index>(grid.node_count()));
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const double x = (grid.nodes[i].x() - box.lo.x()) / box.width();
    const double y = (grid.nodes[i].y() - box.lo.y()) / box.height();
    double value = 0.0;
    for (int a = 0; a < modes; ++a) {
      for (int b = 0; b < modes; ++b) {
        if (a == 0 && b == 0) continue;
        value += coeff[a][b] * std::cos(M_PI * a * x) * std::cos(M_PI * b * y) / (1.0 + a * a + b * b);
      }
    }
    u[static_cast<Eigen::Index>(i)] = value;
  }
  return u;
}

}  // namespace

EstimateResult rayleigh_maximize(const GridPtr& grid, double p, const RayleighOptions& options) {
  if (!(p >= 1.0)) throw ValidationError("rayleigh: p must be >= 1");
  if (options.iters < 1) throw ValidationError("rayleigh: iters must be >= 1");
  if (options.restarts < 0) throw ValidationError("rayleigh: restarts must be >= 0");
  const Grid& g = *grid;
  const auto n = static_cast<Eigen::Index>(g.node_count());

  Factor solver;
  factorize(solver, assemble_stiffness(g), assemble_mass(g), options.shift);
  const RatioObjective objective(g, p, options.smoothing);

  std::vector<Eigen::VectorXd> starts;
  for (const auto& w : options.warm_starts) {
    if (w.size() != n) throw ValidationError("rayleigh: warm start has the wrong size");
    starts.push_back(w);
  }
  for (int r = 0; r < options.restarts; ++r) starts.push_back(random_start(g, split_seed(options.seed, static_cast<std::uint64_t>(r))));

  double best = -1.0;
  Eigen::VectorXd best_u;
  int best_start = -1, total_iterations = 0, usable = 0;

  for (std::size_t s = 0; s < starts.size(); ++s) {
    Eigen::VectorXd u = starts[s];
    double current = ratio_of(grid, u, p);
    if (!std::isfinite(current) || current <= 0.0) continue;
    ++usable;
    if (current > best) {
      best = current;
      best_u = u;
      best_start = static_cast<int>(s);
    }
    u.array() -= objective.mean(u);
    u /= u.cwiseAbs().maxCoeff();
    current = ratio_of(grid, u, p);
    double step = 0.5;
    for (int it = 0; it < options.iters; ++it) {
      ++total_iterations;
      Eigen::VectorXd d = solver.solve(objective.log_gradient(u));
      d.array() -= objective.mean(d);
      const double d_max = d.cwiseAbs().maxCoeff();
      if (!(d_max > 0.0) || !std::isfinite(d_max)) break;
      double alpha = step / d_max;
      bool improved = false;
      Eigen::VectorXd candidate;
      double value = 0.0;
      for (int ls = 0; ls < 50; ++ls) {
        candidate = u + alpha * d;
        candidate.array() -= objective.mean(candidate);
        candidate /= candidate.cwiseAbs().maxCoeff();
        value = ratio_of(grid, candidate, p);
        if (std::isfinite(value) && value > current) {
          improved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!improved) break;
      u = std::move(candidate);
      current = value;
      step = std::min(4.0, 2.0 * alpha * d_max);
      if (current > best) {
        best = current;
        best_u = u;
        best_start = static_cast<int>(s);
      }
    }
  }
  if (usable == 0) throw SolverError("rayleigh: every start has zero gradient");

  EstimateResult result;
  result.method = Method::rayleigh;
  result.p = p;
  result.h = g.h;
  result.seed = options.seed;
  result.constant = best;
  result.witness = DiscreteFunction{grid, best_u};
  result.diagnostics = {
      {"iterations", static_cast<double>(total_iterations)},
      {"starts", static_cast<double>(starts.size())},
      {"best_start", static_cast<double>(best_start)},
      {"nodes", static_cast<double>(n)},
      {"cells", static_cast<double>(g.cell_count())},
      {"seed", static_cast<double>(options.seed)},
  };
  return result;
}

EstimateResult constructive_bound(const DomainSpec& domain, double p, const ArcConstants& constants,
                                  std::optional<double> pprime) {
  if (!(p >= 1.0)) throw ValidationError("constructive: p must be >= 1");
  const double conj = holder_conjugate(p);
  if (pprime) {
    const bool same = std::isinf(conj) ? std::isinf(*pprime) : std::abs(*pprime - conj) <= 1e-12 * conj;
    if (!same) throw ValidationError("constructive: pprime is not the Holder conjugate of p");
  }
  if (!(constants.eta > 0.0)) throw EstimationError("constructive: eta must be positive");
  if (!(constants.C_gamma > 0.0)) throw EstimationError("constructive: C_gamma must be positive");
  if (constants.M < 1) throw EstimationError("constructive: multiplicity must be >= 1");

  const double omega = domain.area;
  const double change = static_cast<double>(constants.M) / constants.eta;
  const double scale = constants.C_gamma / omega;
  // First half: integrate |u(x) - u(y)| over y with the arc slice in x
  // (the measure of the y-set is |Omega|/2 after splitting s at 1/2).
  const double minkowski = scale * (0.5 * omega) * std::pow(change, 1.0 / p);
  // Second half: Holder in y, |Omega|/2 to the power 1/p', then the same
  // change of variables on the p-th powers.
  const double holder_factor = std::isinf(conj) ? 1.0 : std::pow(0.5 * omega, 1.0 / conj);
  const double holder = scale * holder_factor * std::pow(0.5 * omega * change, 1.0 / p);

  EstimateResult result;
  result.method = Method::constructive;
  result.p = p;
  result.h = 0.0;
  result.seed = constants.seed;
  result.constant = minkowski + holder;
  result.diagnostics = {
      {"C_gamma", constants.C_gamma},
      {"eta", constants.eta},
      {"M", static_cast<double>(constants.M)},
      {"pprime", conj},
      {"area", omega},
      {"minkowski_half", minkowski},
      {"holder_half", holder},
      {"closed_form", constants.C_gamma * std::pow(change, 1.0 / p)},
  };
  return result;
}

}  // namespace poincare
