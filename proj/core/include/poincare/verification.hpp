#pragma once

#include <poincare/domain_catalog.hpp>
#include <poincare/estimators.hpp>
#include <poincare/grid.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace poincare {

using ScalarField = std::function<double(const Vec2&)>;

struct TestFunction {
  std::string name;
  std::string generator;
  ScalarField f;
};

/// One generator request. Recognized names: polynomial, trigonometric,
/// radial_bump, cusp_concentrator. `params` is read by cusp_concentrator
/// ("beta", "cutoff"); a missing beta cycles through 0.1, 0.2, 0.3.
struct GeneratorSpec {
  std::string name;
  int count = 0;
  Params params;
};

struct TestFunctionSuite {
  DomainSpec domain;
  std::uint64_t seed = 0;
  std::vector<TestFunction> functions;

  [[nodiscard]] std::size_t size() const { return functions.size(); }
  void add(std::string name, ScalarField f) { functions.push_back({std::move(name), "custom", std::move(f)}); }
};

/// polynomial x10, trigonometric x10, radial_bump x6, cusp_concentrator x6.
[[nodiscard]] std::vector<GeneratorSpec> default_suite_spec();

/// Throws ValidationError on an unknown generator name or negative count.
[[nodiscard]] TestFunctionSuite generate_suite(const DomainSpec& domain, const std::vector<GeneratorSpec>& spec,
                                               std::uint64_t seed);

struct VerificationRow {
  std::string name;
  double dev_norm = 0.0;
  double grad_norm = 0.0;
  double ratio = 0.0;
  /// Gradient vanished on the grid while the deviation did not.
  bool flagged = false;
};

struct VerificationReport {
  std::string domain;
  double p = 2.0;
  double constant = 0.0;
  double h = 0.0;
  double tolerance = 0.05;
  std::vector<VerificationRow> rows;
  double max_ratio = 0.0;
  std::string argmax;
  std::size_t flagged = 0;
  bool pass = false;
};

/// Ratios of every suite function against C on the grid; passes when no
/// row is flagged and max ratio <= C (1 + tolerance).
[[nodiscard]] VerificationReport verify_inequality(const GridPtr& grid, double p, double C,
                                                   const TestFunctionSuite& suite, double tolerance = 0.05);
[[nodiscard]] VerificationReport verify_inequality(const DomainSpec& domain, double p, double C,
                                                   const TestFunctionSuite& suite, double h,
                                                   double tolerance = 0.05);

/// Settings shared by sweeps and the neck check.
struct EstimateSettings {
  std::uint64_t seed = 0;
  int iters = 200;
  int restarts = 8;
  std::size_t n_pairs = 400;
  int s_grid = 25;
  std::optional<double> contraction;
};

/// Runs one estimate of any method on a domain at cell size h.
[[nodiscard]] EstimateResult run_estimate(const DomainSpec& domain, double p, Method method, double h,
                                          const EstimateSettings& settings = {});

struct SweepRow {
  double param = 0.0;
  double constant = 0.0;
  double max_ratio = 0.0;
  bool pass = false;
};

struct SweepReport {
  std::string family;
  std::string parameter;
  Method method = Method::eigen;
  double p = 2.0;
  double h = 0.0;
  double tolerance = 0.05;
  std::vector<SweepRow> rows;
  /// Monotonicity of the constant against the parameter values, sorted
  /// ascending.
  bool nondecreasing = false;
  bool nonincreasing = false;
  bool strictly_increasing = false;
  bool strictly_decreasing = false;
  /// Set when a member failed; rows then hold the members before it.
  std::optional<std::string> error;

  [[nodiscard]] bool complete() const { return !error.has_value(); }
};

/// One estimate per value plus the default suite's max ratio against it.
/// For families without a parameter the values are labels only.
/// Throws ValidationError upfront for invalid values; estimation failures
/// end the sweep with a partial report.
[[nodiscard]] SweepReport sweep_family(const std::string& family, const std::vector<double>& values, double p,
                                       Method method, double h, const EstimateSettings& settings = {},
                                       double tolerance = 0.05);

struct GrowthFactor {
  double param = 0.0;
  /// C(param / 4) / C(param).
  double factor = 0.0;
};

struct NeckReport {
  std::string family;
  double p = 2.0;
  double h = 0.0;
  std::vector<double> values;
  std::vector<double> constants;
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<GrowthFactor> growth_factors;
};

/// Least-squares slope of log C against log of the parameter, and the
/// growth factor of every value whose quarter is also in the list.
/// Needs at least 3 values spanning a factor of 4 (ValidationError);
/// non-positive constants raise EstimationError.
[[nodiscard]] NeckReport neck_scaling_check(const std::string& family, const std::vector<double>& values, double p,
                                            double h, const EstimateSettings& settings = {});

}  // namespace poincare
