#include <benchmark/benchmark.h>

#include "zsk/datagen.hpp"
#include "zsk/methods.hpp"
#include "zsk/svr.hpp"

namespace {

using namespace zsk;

ZeroShotDataset dataset(std::size_t targets, std::size_t per_target) {
  SynthSpec spec;
  spec.targets = targets;
  spec.instances_per_target = per_target;
  spec.feature_dim = 10;
  spec.side_dim = 5;
  spec.seed = 3;
  return generate(spec);
}

// Fit on n_o * m_o rows; range(0) = m_o with n_o = 20.
void BM_Fit(benchmark::State& state, MethodVariant variant) {
  const auto ds = dataset(static_cast<std::size_t>(state.range(0)), 20);
  SvrConfig cfg;
  cfg.c = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(ZeroShotRegressor::fit(ds, variant, cfg));
  state.SetComplexityN(static_cast<std::int64_t>(ds.rows()));
}
BENCHMARK_CAPTURE(BM_Fit, BL_L, MethodVariant::bl_linear())->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fit, BL_Q, MethodVariant::bl_quadratic())->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fit, DSIL_KQ, MethodVariant::dsil())->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fit, SR_E, MethodVariant::sr(Distance::Euclidean))->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Fit, MPLC, MethodVariant::mplc())->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

// Dual solve alone on a precomputed DSIL Gram matrix.
void BM_SolveDual(benchmark::State& state) {
  const auto ds = dataset(static_cast<std::size_t>(state.range(0)), 20);
  const Matrix gram = gram_matrix(joint_points(ds), KernelSpec::dsil(DsilFormulation::KQ));
  SvrConfig cfg;
  cfg.c = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_dual(gram, ds.labels(), cfg));
}
BENCHMARK(BM_SolveDual)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
