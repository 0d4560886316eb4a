#include <benchmark/benchmark.h>

#include "meancycle/cycle.hpp"
#include "meancycle/engine.hpp"
#include "meancycle/graph.hpp"
#include "meancycle/rng.hpp"
#include "meancycle/solver.hpp"

using namespace meancycle;

static void BM_SampleComplete(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto g = sample_complete(n, Orientation::directed, seed++);
    benchmark::DoNotOptimize(g.w.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * (n - 1));
}
BENCHMARK(BM_SampleComplete)->Arg(100)->Arg(300)->Arg(1000);

static void BM_UniformWindowScan(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  std::vector<double> xs(L);
  double W = 0.0;
  for (int i = 0; i < L; ++i) {
    xs[i] = exp1_from_hash(hash_pair(9, 1, static_cast<std::uint64_t>(i)));
    W += xs[i];
  }
  const double b = W / L;
  for (auto _ : state) {
    benchmark::DoNotOptimize(uniformly_light_weights(xs, 5.0, b));
  }
  state.SetItemsProcessed(state.iterations() * L);
}
BENCHMARK(BM_UniformWindowScan)->Arg(2000)->Arg(20000);

static void BM_KarpDirected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_complete(n, Orientation::directed, 11);
  for (auto _ : state) {
    auto r = karp_min_mean_cycle(g);
    benchmark::DoNotOptimize(r.min_mean);
  }
}
BENCHMARK(BM_KarpDirected)->Arg(50)->Arg(100)->Arg(200);

static void BM_HowardDirected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_complete(n, Orientation::directed, 12);
  for (auto _ : state) {
    auto r = howard_min_mean_cycle(g);
    benchmark::DoNotOptimize(r.min_mean);
  }
}
BENCHMARK(BM_HowardDirected)->Arg(100)->Arg(300)->Arg(1000);

static void BM_HowardUndirected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_complete(n, Orientation::undirected, 13);
  for (auto _ : state) {
    auto r = howard_min_mean_cycle(g);
    benchmark::DoNotOptimize(r.min_mean);
  }
}
BENCHMARK(BM_HowardUndirected)->Arg(50)->Arg(100)->Arg(200);

static void BM_PrunedSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_complete(n, Orientation::directed, 14);
  for (auto _ : state) {
    auto r = pruned_solve(g);
    benchmark::DoNotOptimize(r.min_mean);
  }
}
BENCHMARK(BM_PrunedSolve)->Arg(100)->Arg(300)->Arg(1000);

static void BM_EngineUndirected(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_complete(n, Orientation::undirected, 15);
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, g.weight(i, j)});
  for (auto _ : state) {
    auto r = exact_undirected_min_mean_cycle(n, edges);
    benchmark::DoNotOptimize(r.min_mean);
  }
}
BENCHMARK(BM_EngineUndirected)->Arg(100)->Arg(300)->Arg(1000);

static void BM_MinMaxCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = sample_complete(n, Orientation::undirected, 16);
  for (auto _ : state) {
    auto r = min_max_cycle(g);
    benchmark::DoNotOptimize(r.min_mean);
  }
}
BENCHMARK(BM_MinMaxCycle)->Arg(100)->Arg(1000);

static void BM_CensusSampled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto c = count_light_cycles_sampled(n, Orientation::directed, 17, 1.0, 6);
    benchmark::DoNotOptimize(c.counts);
  }
}
BENCHMARK(BM_CensusSampled)->Arg(100)->Arg(300);

BENCHMARK_MAIN();
