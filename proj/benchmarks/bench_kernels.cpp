#include <benchmark/benchmark.h>

#include <random>

#include "zsk/kernels.hpp"

namespace {

using namespace zsk;

PointSet random_points(std::size_t n, std::size_t a_x, std::size_t a_s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix m(n, a_x + a_s);
  for (double& v : m.data()) v = u(rng);
  return PointSet(std::move(m), a_x);
}

// Single evaluation; range(0) = a_x = a_s.
void BM_DsilKernel(benchmark::State& state, DsilFormulation f) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const PointSet p = random_points(2, dim, dim, 1);
  for (auto _ : state) benchmark::DoNotOptimize(dsil_kernel(p.point(0), p.point(1), f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_DsilKernel, Phi, DsilFormulation::Phi)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNSquared);
BENCHMARK_CAPTURE(BM_DsilKernel, KPhi, DsilFormulation::KPhi)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNSquared);
BENCHMARK_CAPTURE(BM_DsilKernel, KQ, DsilFormulation::KQ)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oN);

// Full Gram matrix; range(0) = points, range(1) = a_x = a_s.
void BM_Gram(benchmark::State& state, KernelSpec spec) {
  const PointSet p = random_points(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)),
                                   static_cast<std::size_t>(state.range(1)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(p, spec));
}
BENCHMARK_CAPTURE(BM_Gram, BL_Q, KernelSpec::quadratic(1.0))->Args({200, 50})->Args({200, 250})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Gram, DSIL_Phi, KernelSpec::dsil(DsilFormulation::Phi))->Args({200, 50})->Args({200, 250})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Gram, DSIL_KPhi, KernelSpec::dsil(DsilFormulation::KPhi))->Args({200, 50})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Gram, DSIL_KQ, KernelSpec::dsil(DsilFormulation::KQ))->Args({200, 50})->Args({200, 250})->Unit(benchmark::kMillisecond);

}  // namespace
