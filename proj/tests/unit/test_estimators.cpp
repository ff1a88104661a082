#include <poincare/error.hpp>
#include <poincare/estimators.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace poincare;

namespace {

const GridPtr& square64() {
  static const GridPtr g = build_grid(instantiate("unit_square"), 1.0 / 64);
  return g;
}

}  // namespace

TEST(Eigen, UnitSquare) {
  const EstimateResult r = neumann_optimal_constant(square64());
  EXPECT_EQ(r.method, Method::eigen);
  EXPECT_NEAR(r.constant, 1.0 / M_PI, 0.02 / M_PI);
  EXPECT_LE(r.diagnostic("residual"), 1e-8);
  EXPECT_NEAR(r.constant, 1.0 / std::sqrt(r.diagnostic("lambda1")), 1e-8);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->size(), square64()->node_count());
}

TEST(Eigen, RectangleAndDisk) {
  const EstimateResult rect = neumann_optimal_constant(build_grid(instantiate("rectangle"), 1.0 / 64));
  EXPECT_NEAR(rect.constant, 2.0 / M_PI, 0.02 * 2.0 / M_PI);
  const EstimateResult disk = neumann_optimal_constant(build_grid(instantiate("disk"), 1.0 / 64));
  EXPECT_NEAR(disk.constant, 1.0 / 1.84118, 0.03 / 1.84118);
  EXPECT_LE(disk.diagnostic("residual"), 1e-8);
}

TEST(Eigen, WitnessReproducesTheConstant) {
  const EstimateResult r = neumann_optimal_constant(build_grid(instantiate("power_cusp"), 1.0 / 32));
  EXPECT_NEAR(poincare_ratio(*r.witness, 2.0), r.constant, 1e-8 * r.constant);
  EXPECT_EQ(r.witness->values.cwiseAbs().maxCoeff(), 1.0);
}

TEST(Eigen, DisconnectedGridIsRejected) {
  try {
    (void)neumann_optimal_constant(build_grid(instantiate("two_squares_disjoint"), 1.0 / 16));
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("multiple zero eigenvalues"), std::string::npos);
  }
}

TEST(Eigen, NonConvergenceIsReported) {
  EigenOptions opts;
  opts.max_iterations = 1;
  opts.target = 0.0;
  opts.tolerance = 1e-14;
  EXPECT_THROW((void)neumann_optimal_constant(square64(), opts), SolverError);
}

TEST(Eigen, RefinementConvergesMonotonically) {
  const auto sq = instantiate("unit_square");
  double prev = neumann_optimal_constant(build_grid(sq, 1.0 / 8)).constant;
  double prev_change = INFINITY;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const double c = neumann_optimal_constant(build_grid(sq, h)).constant;
    const double change = std::abs(c - prev);
    EXPECT_LT(change, prev_change) << h;
    prev_change = change;
    prev = c;
  }
}

TEST(Eigen, DeterministicInSeed) {
  const auto a = neumann_optimal_constant(square64());
  const auto b = neumann_optimal_constant(square64());
  EXPECT_EQ(a.constant, b.constant);
  EXPECT_EQ(a.witness->values, b.witness->values);
}

TEST(Rayleigh, MatchesEigenAtPTwo) {
  const double eig = neumann_optimal_constant(square64()).constant;
  const EstimateResult r = rayleigh_maximize(square64(), 2.0);
  EXPECT_NEAR(r.constant, eig, 0.05 * eig);
  EXPECT_LE(r.constant, eig * (1.0 + 1e-9));
  EXPECT_EQ(poincare_ratio(*r.witness, 2.0), r.constant);
}

TEST(Rayleigh, DominatesSampleFunctions) {
  const GridPtr g = build_grid(instantiate("power_cusp", {{"k", 2}}), 1.0 / 32);
  for (double p : {1.0, 3.0}) {
    RayleighOptions opts;
    opts.restarts = 3;
    opts.iters = 60;
    const EstimateResult r = rayleigh_maximize(g, p, opts);
    for (const auto& f : {+[](const Vec2& q) { return q.x(); }, +[](const Vec2& q) { return q.y(); },
                          +[](const Vec2& q) { return std::cos(M_PI * q.x()); }}) {
      EXPECT_GE(r.constant, poincare_ratio(interpolate(g, f), p)) << p;
    }
  }
}

TEST(Rayleigh, WarmStartNeverDecreases) {
  const GridPtr g = build_grid(instantiate("disk"), 1.0 / 16);
  RayleighOptions opts;
  opts.iters = 5;
  opts.restarts = 2;
  opts.seed = 4;
  const EstimateResult first = rayleigh_maximize(g, 3.0, opts);
  opts.iters = 10;
  opts.warm_starts = {first.witness->values};
  const EstimateResult second = rayleigh_maximize(g, 3.0, opts);
  EXPECT_GE(second.constant, first.constant);
}

TEST(Rayleigh, DeterministicInSeed) {
  const GridPtr g = build_grid(instantiate("unit_square"), 1.0 / 16);
  RayleighOptions opts;
  opts.seed = 9;
  opts.iters = 20;
  const auto a = rayleigh_maximize(g, 1.0, opts);
  const auto b = rayleigh_maximize(g, 1.0, opts);
  EXPECT_EQ(a.constant, b.constant);
  EXPECT_EQ(a.witness->values, b.witness->values);
}

TEST(Rayleigh, DegenerateStartsFail) {
  const GridPtr g = build_grid(instantiate("unit_square"), 1.0 / 8);
  RayleighOptions opts;
  opts.restarts = 0;
  opts.warm_starts = {Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g->node_count()), 2.0)};
  EXPECT_THROW((void)rayleigh_maximize(g, 2.0, opts), SolverError);
  EXPECT_THROW((void)rayleigh_maximize(g, 0.5), ValidationError);
  opts.warm_starts = {Eigen::VectorXd::Zero(3)};
  EXPECT_THROW((void)rayleigh_maximize(g, 2.0, opts), ValidationError);
}

TEST(Constructive, ClosedForm) {
  const auto sq = instantiate("unit_square");
  ArcConstants c;
  c.C_gamma = 1.697;
  c.eta = 0.01;
  c.M = 1;
  const EstimateResult two = constructive_bound(sq, 2.0, c);
  EXPECT_NEAR(two.constant, 16.97, 1e-10);
  EXPECT_NEAR(two.diagnostic("minkowski_half"), 0.5 * 16.97, 1e-10);
  EXPECT_NEAR(two.diagnostic("holder_half"), 0.5 * 16.97, 1e-10);
  EXPECT_NEAR(constructive_bound(sq, 1.0, c).constant, 169.7, 1e-9);
  EXPECT_NEAR(constructive_bound(sq, 3.0, c).constant, 1.697 * std::cbrt(100.0), 1e-10);
  EXPECT_GE(two.constant, neumann_optimal_constant(square64()).constant);
}

TEST(Constructive, HalvesAgreeOffUnitArea) {
  const auto d = instantiate("dumbbell");
  ArcConstants c;
  c.C_gamma = 2.0;
  c.eta = 0.05;
  c.M = 3;
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const EstimateResult r = constructive_bound(d, p, c);
    EXPECT_NEAR(r.diagnostic("minkowski_half"), r.diagnostic("holder_half"), 1e-12 * r.constant);
    EXPECT_NEAR(r.constant, r.diagnostic("closed_form"), 1e-12 * r.constant);
  }
}

TEST(Constructive, InvalidConstants) {
  const auto sq = instantiate("unit_square");
  ArcConstants c;
  c.C_gamma = 1.0;
  c.eta = 0.0;
  EXPECT_THROW((void)constructive_bound(sq, 2.0, c), EstimationError);
  c.eta = 0.1;
  EXPECT_THROW((void)constructive_bound(sq, 2.0, c, 3.0), ValidationError);
  EXPECT_NO_THROW((void)constructive_bound(sq, 2.0, c, 2.0));
  EXPECT_NO_THROW((void)constructive_bound(sq, 1.0, c, INFINITY));
  EXPECT_THROW((void)constructive_bound(sq, 0.9, c), ValidationError);
}

TEST(Constructive, DominatesRayleighOnTheCusp) {
  const auto cusp = instantiate("power_cusp", {{"k", 2}});
  const ArcConstants c = estimate_constants(ArcFamily::build(cusp), 200, 13, 0);
  const GridPtr g = build_grid(cusp, 1.0 / 32);
  RayleighOptions opts;
  opts.restarts = 2;
  opts.iters = 50;
  for (double p : {1.0, 2.0, 3.0}) EXPECT_GE(constructive_bound(cusp, p, c).constant, rayleigh_maximize(g, p, opts).constant);
}

TEST(Methods, Names) {
  for (Method m : {Method::eigen, Method::rayleigh, Method::constructive}) EXPECT_EQ(method_from_name(method_name(m)), m);
  EXPECT_THROW((void)method_from_name("newton"), ValidationError);
  EXPECT_TRUE(std::isinf(holder_conjugate(1.0)));
  EXPECT_DOUBLE_EQ(holder_conjugate(3.0), 1.5);
}
