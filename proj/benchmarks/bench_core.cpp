#include <poincare/estimators.hpp>
#include <poincare/homotopy_arcs.hpp>
#include <poincare/verification.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace poincare;

void BM_BuildGrid(benchmark::State& state) {
  const DomainSpec disk = instantiate("disk");
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_grid(disk, h));
}
BENCHMARK(BM_BuildGrid)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_EigenSolve(benchmark::State& state) {
  const GridPtr grid = build_grid(instantiate("unit_square"), 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(neumann_optimal_constant(grid).constant);
  state.counters["nodes"] = static_cast<double>(grid->node_count());
}
BENCHMARK(BM_EigenSolve)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Rayleigh(benchmark::State& state) {
  const GridPtr grid = build_grid(instantiate("power_cusp"), 1.0 / 32);
  RayleighOptions options;
  options.restarts = 2;
  options.iters = 50;
  const double p = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rayleigh_maximize(grid, p, options).constant);
}
BENCHMARK(BM_Rayleigh)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EstimateConstants(benchmark::State& state) {
  const ArcFamily arcs = ArcFamily::build(instantiate(state.range(0) == 0 ? "unit_square" : "power_cusp"));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_constants(arcs, 400, 25, 0).eta);
}
BENCHMARK(BM_EstimateConstants)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_VerifySuite(benchmark::State& state) {
  const DomainSpec cusp = instantiate("power_cusp");
  const GridPtr grid = build_grid(cusp, 1.0 / 64);
  const TestFunctionSuite suite = generate_suite(cusp, default_suite_spec(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_inequality(grid, 2.0, 1.0, suite).max_ratio);
}
BENCHMARK(BM_VerifySuite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
