#include <benchmark/benchmark.h>

#include "meancycle/graph.hpp"

// placeholder until the analytic module lands; keeps the target linking
static void BM_Noop(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(state.iterations());
}
BENCHMARK(BM_Noop);

BENCHMARK_MAIN();
