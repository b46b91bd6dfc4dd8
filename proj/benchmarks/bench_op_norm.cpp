#include <benchmark/benchmark.h>

#include "boidol/kernels.hpp"

using namespace boidol;

namespace {
KernelOperator sample_operator(int n) {
  return kernel_pi_rho_lambda(TestFunction::default_function(), 0.5, 1.0, GridSpec::linear(12.0, n));
}
}  // namespace

static void BM_NormSVD(benchmark::State& state) {
  const auto a = sample_operator(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(a, {NormMethod::SVD}));
}
BENCHMARK(BM_NormSVD)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

static void BM_NormPower(benchmark::State& state) {
  const auto a = sample_operator(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(a, {NormMethod::PowerIteration}));
}
BENCHMARK(BM_NormPower)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
