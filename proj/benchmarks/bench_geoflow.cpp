#include <benchmark/benchmark.h>

#include "geoflow/curvature.hpp"
#include "geoflow/flow.hpp"
#include "geoflow/soliton.hpp"

using namespace geoflow;

static void BM_CurvatureReport(benchmark::State& state) {
  const MilnorMetric m(GroupKind::SU2, 1.3, 0.8, 2.1);
  for (auto _ : state) {
    auto r = curvature_report(m, 1.5);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CurvatureReport);

static void BM_ClassifyXcf(benchmark::State& state) {
  const MilnorMetric m(GroupKind::E11, 1.0, 2.0, 1.0);
  for (auto _ : state) {
    auto c = classify_xcf(m, XcfDirection::Plus);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ClassifyXcf);

static void BM_ClassifyRg2Steady(benchmark::State& state) {
  const MilnorMetric m(GroupKind::SU2, 4.0, 3.0, 3.0);
  for (auto _ : state) {
    auto c = classify_rg2_steady(m, -18.0);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_ClassifyRg2Steady);

static void BM_SweepResiduals(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rows = sweep_residuals(GroupKind::SL2tilde, {FlowTensorTag::XCFPlusH},
                                {0.5, 2.0, n}, {0.5, 2.0, n}, {0.5, 2.0, n});
    benchmark::DoNotOptimize(rows);
  }
  state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(BM_SweepResiduals)->Arg(5)->Arg(11);

static void BM_IntegrateRK45(benchmark::State& state) {
  const MilnorMetric m(GroupKind::E11, 1.0, 2.0, 1.0);
  IntegratorControls c;
  c.t_end = 1.0;
  for (auto _ : state) {
    auto traj = integrate({FlowKindTag::XCFPlus}, m, c);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_IntegrateRK45);

static void BM_IntegrateRK4Fixed(benchmark::State& state) {
  const MilnorMetric m(GroupKind::Heisenberg, 1.0, 1.0, 1.0);
  IntegratorControls c;
  c.method = IntegrationMethod::RK4Fixed;
  c.fixed_step = 1e-3;
  c.t_end = 0.4;
  for (auto _ : state) {
    auto traj = integrate({FlowKindTag::XCFPlus}, m, c);
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_IntegrateRK4Fixed);

BENCHMARK_MAIN();
