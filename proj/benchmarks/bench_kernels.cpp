#include <benchmark/benchmark.h>

#include "boidol/kernels.hpp"

using namespace boidol;

static void BM_PiRhoLambda(benchmark::State& state) {
  const auto f = TestFunction::default_function();
  const GridSpec g = GridSpec::linear(12.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_pi_rho_lambda(f, 0.5, 1.0, g).entries.data());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PiRhoLambda)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Tau(benchmark::State& state) {
  const auto f = TestFunction::default_function();
  const GridSpec g = GridSpec::log_half_line(Sign::Plus, 10.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_tau(f, 0.5, 1.0, g).entries.data());
}
BENCHMARK(BM_Tau)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

static void BM_Character(benchmark::State& state) {
  const auto f = TestFunction::default_function();
  double tau = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(character_value(f, tau += 1e-3));
}
BENCHMARK(BM_Character);

BENCHMARK_MAIN();
