#include <benchmark/benchmark.h>

#include "boidol/fields.hpp"
#include "boidol/plans.hpp"

using namespace boidol;

static void BM_FourierFieldPlan(benchmark::State& state) {
  const auto f = TestFunction::default_function();
  const SequencePlan p = default_plan(Regime::OmegaNonzero, PowerLaw{1, 1}, PowerLaw{1, -1}, {4, 8}, "k_1/k");
  const SpectrumSample s = plan_sample(p);
  FieldGrids g;
  g.linear = GridSpec::linear(12.0, 256);
  g.log_pair = GridSpec::log_pair(10.0, 256);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_field(f, s, g).gen.size());
}
BENCHMARK(BM_FourierFieldPlan)->Unit(benchmark::kMillisecond)->Iterations(2);

BENCHMARK_MAIN();
