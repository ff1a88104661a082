#pragma once

#include <poincare/domain_catalog.hpp>
#include <poincare/grid.hpp>
#include <poincare/homotopy_arcs.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace poincare {

enum class Method { eigen, rayleigh, constructive };

[[nodiscard]] std::string_view method_name(Method m);
/// Throws ValidationError for anything but eigen, rayleigh, constructive.
[[nodiscard]] Method method_from_name(std::string_view name);

/// Named scalars in insertion order, so reports serialize stably.
using Diagnostics = std::vector<std::pair<std::string, double>>;

struct EstimateResult {
  Method method = Method::eigen;
  double p = 2.0;
  double constant = 0.0;
  /// Cell size of the grid the estimate lives on; 0 for the constructive
  /// bound, which is grid-free.
  double h = 0.0;
  std::optional<DiscreteFunction> witness;
  Diagnostics diagnostics;
  std::uint64_t seed = 0;

  /// Value of a diagnostic, or NaN when absent.
  [[nodiscard]] double diagnostic(std::string_view key) const;
};

struct EigenOptions {
  double shift = 1.0;
  int block = 8;
  int max_iterations = 300;
  /// Iteration stops once the relative residual drops below `target`;
  /// anything above `tolerance` at the end is a SolverError.
  double target = 1e-10;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
};

/// Optimal p = 2 constant lambda_1^{-1/2} of the discrete Neumann problem
/// K v = lambda M v (Q1 stiffness, consistent mass), from shift-invert
/// subspace iteration with the constant mode deflated. The witness is the
/// eigenvector; the reported constant is its Poincare ratio.
///
/// Throws SolverError "multiple zero eigenvalues" on a disconnected grid
/// and on non-convergence.
[[nodiscard]] EstimateResult neumann_optimal_constant(const Grid& grid, const EigenOptions& options = {});
[[nodiscard]] EstimateResult neumann_optimal_constant(const GridPtr& grid, const EigenOptions& options = {});

struct RayleighOptions {
  int iters = 200;
  int restarts = 8;
  std::uint64_t seed = 0;
  /// Extra starting points, tried first and in order.
  std::vector<Eigen::VectorXd> warm_starts;
  double shift = 1.0;
  /// Smoothing of |z|^{p-2} for p < 2, relative to the current scale.
  double smoothing = 1e-6;
};

/// Lower bound on the discrete optimal constant: preconditioned gradient
/// ascent of |u - mean|_p / |grad u|_p from several starts. Each start
/// keeps its best iterate, and the first start reaching the overall best
/// value wins ties.
///
/// Throws SolverError when every start has zero gradient.
[[nodiscard]] EstimateResult rayleigh_maximize(const GridPtr& grid, double p, const RayleighOptions& options = {});

/// The bound C_gamma (M / eta)^{1/p} obtained by following the Minkowski
/// and Holder halves of the proof with measured arc constants. Both halves
/// appear in the diagnostics. `pprime` defaults to p / (p - 1), infinity
/// for p = 1.
///
/// Throws EstimationError when eta <= 0 or C_gamma <= 0, ValidationError
/// when p < 1 or pprime is not the conjugate of p.
[[nodiscard]] EstimateResult constructive_bound(const DomainSpec& domain, double p, const ArcConstants& constants,
                                                std::optional<double> pprime = std::nullopt);

[[nodiscard]] double holder_conjugate(double p);

}  // namespace poincare
