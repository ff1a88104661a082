#include <poincare/error.hpp>
#include <poincare/verification.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace poincare {

std::vector<GeneratorSpec> default_suite_spec() {
  return {{"polynomial", 10, {}}, {"trigonometric", 10, {}}, {"radial_bump", 6, {}}, {"cusp_concentrator", 6, {}}};
}

namespace {

void add_polynomials(TestFunctionSuite& suite, int count) {
  // Monomials x^a y^b by total degree, starting with x.
  int added = 0;
  for (int degree = 1; added < count; ++degree) {
    for (int b = 0; b <= degree && added < count; ++b) {
      const int a = degree - b;
      suite.functions.push_back({"poly_x" + std::to_string(a) + "_y" + std::to_string(b), "polynomial",
                                 [a, b](const Vec2& q) { return std::pow(q.x(), a) * std::pow(q.y(), b); }});
      ++added;
    }
  }
}

void add_trigonometric(TestFunctionSuite& suite, int count, std::uint64_t seed) {
  std::mt19937_64 rng(split_seed(seed, 1));
  std::uniform_int_distribution<int> freq(0, 3);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  const Box box = suite.domain.bbox;
  for (int i = 0; i < count; ++i) {
    int a = freq(rng), b = freq(rng);
    if (a == 0 && b == 0) a = 1;
    const double phi = phase(rng);
    const double wx = M_PI * a / box.width(), wy = M_PI * b / box.height();
    const Vec2 lo = box.lo;
    suite.functions.push_back({"trig_" + std::to_string(i), "trigonometric", [=](const Vec2& q) {
                                 return std::cos(wx * (q.x() - lo.x()) + wy * (q.y() - lo.y()) + phi);
                               }});
  }
}

void add_bumps(TestFunctionSuite& suite, int count, std::uint64_t seed) {
  if (count == 0) return;
  const PointSample centers = sample_interior(suite.domain, static_cast<std::size_t>(count), split_seed(seed, 2));
  std::mt19937_64 rng(split_seed(seed, 3));
  const double diam = (suite.domain.bbox.hi - suite.domain.bbox.lo).norm();
  std::uniform_real_distribution<double> width(0.1 * diam, 0.4 * diam);
  for (int i = 0; i < count; ++i) {
    const Vec2 c = centers.points[static_cast<std::size_t>(i)];
    const double w = width(rng);
    suite.functions.push_back({"bump_" + std::to_string(i), "radial_bump",
                               [c, w](const Vec2& q) { return std::exp(-(q - c).squaredNorm() / (w * w)); }});
  }
}

void add_concentrators(TestFunctionSuite& suite, int count, const Params& params) {
  const Vec2 tip = suite.domain.tip.value_or(suite.domain.bbox.lo);
  const auto fixed_beta = params.find("beta");
  const auto fixed_cutoff = params.find("cutoff");
  for (const auto& [key, value] : params) {
    if (key != "beta" && key != "cutoff") throw ValidationError("cusp_concentrator: unknown parameter '" + key + "'");
    if (!(value > 0.0)) throw ValidationError("cusp_concentrator: " + key + " must be positive");
  }
  static constexpr double betas[] = {0.1, 0.2, 0.3};
  static constexpr double cutoffs[] = {0.1, 0.02};
  for (int i = 0; i < count; ++i) {
    const double beta = fixed_beta != params.end() ? fixed_beta->second : betas[i % 3];
    const double cutoff = fixed_cutoff != params.end() ? fixed_cutoff->second : cutoffs[(i / 3) % 2];
    suite.functions.push_back({"concentrator_" + std::to_string(i), "cusp_concentrator", [=](const Vec2& q) {
                                 return std::pow((q - tip).squaredNorm() + cutoff * cutoff, -0.5 * beta);
                               }});
  }
}

}  // namespace

TestFunctionSuite generate_suite(const DomainSpec& domain, const std::vector<GeneratorSpec>& spec,
                                 std::uint64_t seed) {
  TestFunctionSuite suite{domain, seed, {}};
  for (const auto& g : spec) {
    if (g.count < 0) throw ValidationError("generator '" + g.name + "': negative count");
    if (g.name != "cusp_concentrator" && !g.params.empty()) {
      throw ValidationError("generator '" + g.name + "' takes no parameters");
    }
    if (g.name == "polynomial") {
      add_polynomials(suite, g.count);
    } else if (g.name == "trigonometric") {
      add_trigonometric(suite, g.count, seed);
    } else if (g.name == "radial_bump") {
      add_bumps(suite, g.count, seed);
    } else if (g.name == "cusp_concentrator") {
      add_concentrators(suite, g.count, g.params);
    } else {
      throw ValidationError("unknown generator '" + g.name + "'");
    }
  }
  return suite;
}

VerificationReport verify_inequality(const GridPtr& grid, double p, double C, const TestFunctionSuite& suite,
                                     double tolerance) {
  if (!(C > 0.0)) throw ValidationError("verify: C must be positive");
  if (!(p >= 1.0)) throw ValidationError("verify: p must be >= 1");
  if (!(tolerance >= 0.0)) throw ValidationError("verify: tolerance must be nonnegative");
  VerificationReport report;
  report.domain = grid->domain.name;
  report.p = p;
  report.constant = C;
  report.h = grid->h;
  report.tolerance = tolerance;

  const double measure = std::pow(grid->active_area(), 1.0 / p);
  const double diam = (grid->domain.bbox.hi - grid->domain.bbox.lo).norm();
  for (const auto& fn : suite.functions) {
    const DiscreteFunction u = interpolate(grid, fn.f);
    if (!u.values.allFinite()) throw EstimationError("suite function '" + fn.name + "' is not finite on the grid");
    const Seminorms norms = lp_seminorms(u, p);
    const double scale = u.values.cwiseAbs().maxCoeff() * measure;
    const bool dev_zero = norms.dev_norm <= 1e-12 * scale;
    const bool grad_zero = norms.grad_norm <= 1e-12 * scale / diam;
    VerificationRow row{fn.name, norms.dev_norm, norms.grad_norm, 0.0, false};
    if (grad_zero && !dev_zero) {
      row.flagged = true;
      ++report.flagged;
    } else if (!(dev_zero && grad_zero)) {
      row.ratio = norms.dev_norm / norms.grad_norm;
    }
    if (report.rows.empty() || row.ratio > report.max_ratio) {
      report.max_ratio = row.ratio;
      report.argmax = row.name;
    }
    report.rows.push_back(std::move(row));
  }
  report.pass = report.flagged == 0 && report.max_ratio <= C * (1.0 + tolerance);
  return report;
}

VerificationReport verify_inequality(const DomainSpec& domain, double p, double C, const TestFunctionSuite& suite,
                                     double h, double tolerance) {
  return verify_inequality(build_grid(domain, h), p, C, suite, tolerance);
}

EstimateResult run_estimate(const DomainSpec& domain, double p, Method method, double h,
                            const EstimateSettings& settings) {
  switch (method) {
    case Method::eigen: {
      if (p != 2.0) throw ValidationError("the eigen method needs p = 2");
      EigenOptions options;
      options.seed = settings.seed;
      return neumann_optimal_constant(build_grid(domain, h), options);
    }
    case Method::rayleigh: {
      RayleighOptions options;
      options.seed = settings.seed;
      options.iters = settings.iters;
      options.restarts = settings.restarts;
      return rayleigh_maximize(build_grid(domain, h), p, options);
    }
    case Method::constructive: {
      const ArcFamily arcs = ArcFamily::build(domain, HomotopyOptions{std::nullopt, settings.contraction});
      const ArcConstants constants = estimate_constants(arcs, settings.n_pairs, settings.s_grid, settings.seed);
      return constructive_bound(domain, p, constants);
    }
  }
  throw ValidationError("unknown method");
}

namespace {

DomainSpec member(Family family, const std::string& parameter, double value) {
  Params params;
  if (!parameter.empty()) params[parameter] = value;
  return instantiate(family_name(family), params);
}

}  // namespace

SweepReport sweep_family(const std::string& family, const std::vector<double>& values, double p, Method method,
                         double h, const EstimateSettings& settings, double tolerance) {
  const Family fam = family_from_name(family);
  SweepReport report;
  report.family = family;
  report.parameter = sweep_parameter(fam);
  report.method = method;
  report.p = p;
  report.h = h;
  report.tolerance = tolerance;
  if (values.empty()) throw ValidationError("sweep: no parameter values");
  std::vector<DomainSpec> domains;
  for (double v : values) domains.push_back(member(fam, report.parameter, v));

  for (std::size_t i = 0; i < values.size(); ++i) {
    try {
      const EstimateResult est = run_estimate(domains[i], p, method, h, settings);
      const GridPtr grid = est.witness ? est.witness->grid : build_grid(domains[i], h);
      const TestFunctionSuite suite = generate_suite(domains[i], default_suite_spec(), settings.seed);
      const VerificationReport check = verify_inequality(grid, p, est.constant, suite, tolerance);
      report.rows.push_back({values[i], est.constant, check.max_ratio, check.pass});
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      report.error = std::string(e.what());
      break;
    }
  }

  std::vector<std::size_t> order(report.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return report.rows[a].param < report.rows[b].param; });
  report.nondecreasing = report.nonincreasing = report.strictly_increasing = report.strictly_decreasing = true;
  for (std::size_t i = 1; i < order.size(); ++i) {
    const double prev = report.rows[order[i - 1]].constant, next = report.rows[order[i]].constant;
    report.nondecreasing = report.nondecreasing && next >= prev;
    report.nonincreasing = report.nonincreasing && next <= prev;
    report.strictly_increasing = report.strictly_increasing && next > prev;
    report.strictly_decreasing = report.strictly_decreasing && next < prev;
  }
  return report;
}

NeckReport neck_scaling_check(const std::string& family, const std::vector<double>& values, double p, double h,
                              const EstimateSettings& settings) {
  if (values.size() < 3) throw ValidationError("neck check: needs at least 3 values");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  if (!(*lo_it > 0.0)) throw ValidationError("neck check: values must be positive");
  if (*hi_it < 4.0 * *lo_it * (1.0 - 1e-12)) throw ValidationError("neck check: values must span a factor of 4");

  const Family fam = family_from_name(family);
  const std::string parameter = sweep_parameter(fam);
  const Method method = p == 2.0 ? Method::eigen : Method::rayleigh;
  NeckReport report;
  report.family = family;
  report.p = p;
  report.h = h;
  report.values = values;
  for (double v : values) {
    const double c = run_estimate(member(fam, parameter, v), p, method, h, settings).constant;
    if (!(c > 0.0) || !std::isfinite(c)) throw EstimationError("neck check: non-positive constant");
    report.constants.push_back(c);
  }

  const auto n = static_cast<double>(values.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = std::log(values[i]), y = std::log(report.constants[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report.intercept = (sy - report.slope * sx) / n;

  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (std::abs(values[j] - 0.25 * values[i]) <= 1e-9 * values[i]) {
        report.growth_factors.push_back({values[i], report.constants[j] / report.constants[i]});
      }
    }
  }
  return report;
}

}  // namespace poincare
