#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "meancycle/cycle.hpp"
#include "meancycle/engine.hpp"
#include "meancycle/graph.hpp"
#include "meancycle/rng.hpp"
#include "meancycle/solver.hpp"

using namespace meancycle;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GraphInstance blank_instance(int n, Orientation o) {
  GraphInstance g;
  g.n = n;
  g.orientation = o;
  g.seed = 0;
  g.w.assign(static_cast<std::size_t>(n) * n, kInf);
  return g;
}

void set_edge(GraphInstance& g, int i, int j, double w) {
  g.w[static_cast<std::size_t>(i) * g.n + j] = w;
  if (g.orientation == Orientation::undirected) g.w[static_cast<std::size_t>(j) * g.n + i] = w;
}

GraphInstance undirected3(double w01, double w02, double w12) {
  GraphInstance g = blank_instance(3, Orientation::undirected);
  set_edge(g, 0, 1, w01);
  set_edge(g, 0, 2, w02);
  set_edge(g, 1, 2, w12);
  return g;
}

// independent enumeration of all simple cycles from a weight matrix: paths
// start at the cycle's smallest vertex; undirected traversals are emitted
// only with the smaller second vertex, so each cycle appears exactly once
void enum_cycles(const GraphInstance& g,
                 const std::function<void(const std::vector<int>&, double)>& emit) {
  const int n = g.n;
  const bool dir = g.directed();
  const int kmin = dir ? 2 : 3;
  std::vector<int> path;
  std::vector<char> used(n, 0);
  const auto rec = [&](auto&& self, double total) -> void {
    const int v = path.back();
    const int s = path.front();
    if (static_cast<int>(path.size()) >= kmin && (dir || path[1] < v)) {
      const double wc = g.weight(v, s);
      if (wc < kInf) emit(path, total + wc);
    }
    for (int x = s + 1; x < n; ++x) {
      if (used[x] || g.weight(v, x) >= kInf) continue;
      used[x] = 1;
      path.push_back(x);
      self(self, total + g.weight(v, x));
      path.pop_back();
      used[x] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    used[s] = 1;
    rec(rec, 0.0);
    used[s] = 0;
  }
}

struct OracleBest {
  double mean = kInf;
  double max_edge = kInf;  // minimized separately
};

OracleBest oracle_optimum(const GraphInstance& g) {
  OracleBest best;
  enum_cycles(g, [&](const std::vector<int>& verts, double total) {
    best.mean = std::min(best.mean, total / static_cast<double>(verts.size()));
    double mx = g.weight(verts.back(), verts.front());
    for (std::size_t t = 1; t < verts.size(); ++t)
      mx = std::max(mx, g.weight(verts[t - 1], verts[t]));
    best.max_edge = std::min(best.max_edge, mx);
  });
  return best;
}

long long oracle_cycle_count(const GraphInstance& g) {
  long long cnt = 0;
  enum_cycles(g, [&](const std::vector<int>&, double) { ++cnt; });
  return cnt;
}

std::map<int, long long> oracle_census(const GraphInstance& g, double c, int k_max) {
  const int kmin = g.directed() ? 2 : 3;
  std::map<int, long long> counts;
  for (int k = kmin; k <= k_max; ++k) counts[k] = 0;
  enum_cycles(g, [&](const std::vector<int>& verts, double total) {
    const int k = static_cast<int>(verts.size());
    if (k > k_max) return;
    Cycle cyc;
    cyc.vertices = verts;
    cyc.total_weight = total;
    if (is_light(cyc, c, g.n)) ++counts[k];
  });
  return counts;
}

void check_mean_witness(const SolveResult& r, const GraphInstance& g) {
  REQUIRE(!r.witness.vertices.empty());
  const Cycle re = make_cycle(r.witness.vertices, g);
  CHECK(re.vertices == r.witness.vertices);
  CHECK(re.total_weight == doctest::Approx(r.witness.total_weight).epsilon(1e-12));
  CHECK(r.witness.mean_weight() == doctest::Approx(r.min_mean).epsilon(1e-12));
}

double best_two_cycle(const GraphInstance& g) {
  double best = kInf;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      best = std::min(best, 0.5 * (g.weight(i, j) + g.weight(j, i)));
  return best;
}

double best_triangle(const GraphInstance& g) {
  double best = kInf;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      for (int k = j + 1; k < g.n; ++k)
        best = std::min(best, (g.weight(i, j) + g.weight(j, k) + g.weight(i, k)) / 3.0);
  return best;
}

// two light triangles joined by one very cheap edge; every other edge is
// expensive. The cheap bridge invites mean-reducing back-and-forth walks,
// so this pins down that solvers return simple-cycle optima only.
GraphInstance dumbbell() {
  GraphInstance g = blank_instance(7, Orientation::undirected);
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) set_edge(g, i, j, 100.0);
  set_edge(g, 0, 1, 3.0);
  set_edge(g, 0, 2, 3.0);
  set_edge(g, 1, 2, 3.0);
  set_edge(g, 4, 5, 3.0);
  set_edge(g, 4, 6, 3.0);
  set_edge(g, 5, 6, 3.0);
  set_edge(g, 0, 4, 0.01);
  return g;
}

std::vector<WeightedEdge> all_edges(const GraphInstance& g) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.weight(i, j) < kInf) edges.push_back({i, j, g.weight(i, j)});
  return edges;
}

} // namespace

TEST_SUITE("solvers") {

TEST_CASE("two-vertex directed instance averages its two arcs") {
  GraphInstance g = blank_instance(2, Orientation::directed);
  set_edge(g, 0, 1, 0.25);
  set_edge(g, 1, 0, 0.75);
  for (const SolveResult& r :
       {karp_min_mean_cycle(g), howard_min_mean_cycle(g), brute_force_min_mean(g)}) {
    CHECK(r.min_mean == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.witness.vertices == std::vector<int>{0, 1});
    CHECK(r.certified_exact);
    check_mean_witness(r, g);
  }
}

TEST_CASE("triangle instance returns the full-cycle mean") {
  const GraphInstance g = undirected3(1.0, 2.0, 3.0);
  for (const SolveResult& r :
       {karp_min_mean_cycle(g), howard_min_mean_cycle(g), brute_force_min_mean(g)}) {
    CHECK(r.min_mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.witness.length() == 3);
    check_mean_witness(r, g);
  }
}

TEST_CASE("unit directed triangle ties break to the first two-cycle") {
  GraphInstance g = blank_instance(3, Orientation::directed);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) set_edge(g, i, j, 1.0);
  const SolveResult r = brute_force_min_mean(g);
  CHECK(r.min_mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.witness.vertices == std::vector<int>{0, 1});
}

TEST_CASE("exhaustive solver refuses oversized instances") {
  const GraphInstance g = sample_complete(10, Orientation::directed, 3);
  CHECK_THROWS_AS((void)brute_force_min_mean(g), std::invalid_argument);
}

TEST_CASE("cycle enumeration oracle matches closed-form counts") {
  CHECK(oracle_cycle_count(sample_complete(4, Orientation::directed, 1)) == 20);
  CHECK(oracle_cycle_count(sample_complete(4, Orientation::undirected, 1)) == 7);
  CHECK(oracle_cycle_count(sample_complete(5, Orientation::directed, 1)) == 10 + 20 + 30 + 24);
}

TEST_CASE("all solvers agree with enumeration on small instances") {
  for (const Orientation o : {Orientation::directed, Orientation::undirected}) {
    const int n_lo = o == Orientation::directed ? 2 : 3;
    for (int n = n_lo; n <= 8; ++n) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const GraphInstance g = sample_complete(n, o, derive_seed(101, seed));
        const OracleBest oracle = oracle_optimum(g);
        const SolveResult rk = karp_min_mean_cycle(g);
        const SolveResult rh = howard_min_mean_cycle(g);
        const SolveResult rb = brute_force_min_mean(g);
        const SolveResult rp = pruned_solve(g);
        for (const SolveResult* r : {&rk, &rh, &rb, &rp}) {
          CHECK(r->min_mean == doctest::Approx(oracle.mean).epsilon(1e-9));
          CHECK(r->certified_exact);
          check_mean_witness(*r, g);
        }
        CHECK(rk.solver == SolverKind::karp);
        CHECK(rh.solver == SolverKind::howard);
        CHECK(rb.solver == SolverKind::brute_force);
        CHECK(rp.solver == SolverKind::pruned_karp);
        if (o == Orientation::directed)
          CHECK(rk.min_mean <= best_two_cycle(g) * (1.0 + 1e-9));
        else
          CHECK(rk.min_mean <= best_triangle(g) * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("bridged triangle pair is not undercut by non-simple walks") {
  const GraphInstance g = dumbbell();
  for (const SolveResult& r :
       {karp_min_mean_cycle(g), howard_min_mean_cycle(g), brute_force_min_mean(g),
        pruned_solve(g)}) {
    CHECK(r.min_mean == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.witness.length() == 3);
    check_mean_witness(r, g);
  }
}

TEST_CASE("walk solvers agree at moderate sizes") {
  for (const int n : {20, 50, 200}) {
    const GraphInstance g = sample_complete(n, Orientation::directed, 1000 + n);
    const SolveResult rk = karp_min_mean_cycle(g);
    const SolveResult rh = howard_min_mean_cycle(g);
    const SolveResult rp = pruned_solve(g);
    CHECK(rh.min_mean == doctest::Approx(rk.min_mean).epsilon(1e-9));
    CHECK(rp.min_mean == doctest::Approx(rk.min_mean).epsilon(1e-9));
    CHECK(rk.min_mean <= best_two_cycle(g) * (1.0 + 1e-9));
    check_mean_witness(rk, g);
    check_mean_witness(rh, g);
    check_mean_witness(rp, g);
  }
  for (const int n : {30, 60, 200}) {
    const GraphInstance g = sample_complete(n, Orientation::undirected, 2000 + n);
    const SolveResult rk = karp_min_mean_cycle(g);
    const SolveResult rh = howard_min_mean_cycle(g);
    const SolveResult rp = pruned_solve(g);
    CHECK(rh.min_mean == doctest::Approx(rk.min_mean).epsilon(1e-9));
    CHECK(rp.min_mean == doctest::Approx(rk.min_mean).epsilon(1e-9));
    CHECK(rk.min_mean <= best_triangle(g) * (1.0 + 1e-9));
    check_mean_witness(rk, g);
    check_mean_witness(rh, g);
    check_mean_witness(rp, g);
  }
}

TEST_CASE("fixed-seed hundred-vertex scaled optimum lands in its band") {
  const GraphInstance g = sample_complete(100, Orientation::directed, 7);
  const SolveResult r = howard_min_mean_cycle(g);
  CHECK(r.min_mean * 100 > 0.0);
  CHECK(r.min_mean * 100 < 3.0);
}

TEST_CASE("pruned solve equals the plain walk solver") {
  for (const Orientation o : {Orientation::directed, Orientation::undirected}) {
    const int n_lo = o == Orientation::directed ? 2 : 3;
    for (std::uint64_t t = 0; t < 50; ++t) {
      const int n = n_lo + static_cast<int>(derive_seed(7, t) % 38);
      const GraphInstance g = sample_complete(n, o, derive_seed(500, t));
      const SolveResult rp = pruned_solve(g);
      const SolveResult rk = karp_min_mean_cycle(g);
      CHECK(rp.min_mean == doctest::Approx(rk.min_mean).epsilon(1e-9));
      CHECK(rp.certified_exact);
      CHECK(rp.solver == SolverKind::pruned_karp);
      check_mean_witness(rp, g);
    }
  }
}

TEST_CASE("pruning keeps a plausible fraction of a large directed instance") {
  const GraphInstance g = sample_complete(500, Orientation::directed, 99);
  const SolveResult mm = min_max_cycle(g);
  double muhat = std::min(mm.witness.total_weight / mm.witness.length(), best_two_cycle(g));
  long long surviving = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && g.weight(i, j) <= g.n * muhat) ++surviving;
  const double fraction =
      static_cast<double>(surviving) / (static_cast<double>(g.n) * (g.n - 1));
  CHECK(fraction > 0.15);
  CHECK(fraction < 0.9);
  const SolveResult rp = pruned_solve(g);
  CHECK(rp.certified_exact);
  CHECK(rp.min_mean <= muhat * (1.0 + 1e-12));
  check_mean_witness(rp, g);
}

TEST_CASE("bottleneck solver returns the heaviest edge of its cycle") {
  const GraphInstance tri = undirected3(0.1, 0.2, 0.3);
  const SolveResult r3 = min_max_cycle(tri);
  CHECK(r3.min_mean == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r3.witness.length() == 3);
  CHECK(r3.solver == SolverKind::threshold);

  GraphInstance two = blank_instance(2, Orientation::directed);
  set_edge(two, 0, 1, 0.2);
  set_edge(two, 1, 0, 0.7);
  const SolveResult r2 = min_max_cycle(two);
  CHECK(r2.min_mean == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(r2.witness.vertices == std::vector<int>{0, 1});
  CHECK(r2.witness.total_weight == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("bottleneck solver agrees with enumeration") {
  for (const Orientation o : {Orientation::directed, Orientation::undirected}) {
    const int n_lo = o == Orientation::directed ? 2 : 3;
    for (int n = std::max(4, n_lo); n <= 7; ++n) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const GraphInstance g = sample_complete(n, o, derive_seed(303, seed * 8 + n));
        const OracleBest oracle = oracle_optimum(g);
        const SolveResult r = min_max_cycle(g);
        CHECK(r.min_mean == doctest::Approx(oracle.max_edge).epsilon(1e-12));
        CHECK(r.certified_exact);
        const Cycle re = make_cycle(r.witness.vertices, g);
        CHECK(re.total_weight == doctest::Approx(r.witness.total_weight).epsilon(1e-12));
        double mx = 0.0;
        for (const double w : cycle_edge_weights(r.witness, g)) mx = std::max(mx, w);
        CHECK(mx == doctest::Approx(r.min_mean).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bottleneck insertion escalates past an acyclic light prefix") {
  const int n = 30;
  GraphInstance g = blank_instance(n, Orientation::directed);
  double heavy_min = kInf;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (i < j) {
        set_edge(g, i, j, 0.001 + 1e-6 * (i * n + j));  // forward arcs: light, acyclic
      } else {
        const double w = 10.0 + 1e-3 * (i * n + j);
        set_edge(g, i, j, w);
        heavy_min = std::min(heavy_min, w);
      }
    }
  const SolveResult r = min_max_cycle(g);
  CHECK(r.min_mean == doctest::Approx(heavy_min).epsilon(1e-12));
  const SolveResult again = min_max_cycle(g);
  CHECK(again.witness.vertices == r.witness.vertices);
}

} // TEST_SUITE("solvers")

TEST_SUITE("engine") {

TEST_CASE("complete instances match the exhaustive solver") {
  for (int n = 5; n <= 9; ++n) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const GraphInstance g = sample_complete(n, Orientation::undirected, derive_seed(42, seed * 16 + n));
      const SolveResult rb = brute_force_min_mean(g);
      const SolveResult re = exact_undirected_min_mean_cycle(g.n, all_edges(g));
      CHECK(re.min_mean == doctest::Approx(rb.min_mean).epsilon(1e-9));
      CHECK(re.certified_exact);
      const Cycle wit = make_cycle(re.witness.vertices, g);
      CHECK(wit.mean_weight() == doctest::Approx(re.min_mean).epsilon(1e-12));
    }
  }
}

TEST_CASE("sparse instances match enumeration including acyclic ones") {
  for (int n = 6; n <= 10; ++n) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      GraphInstance g = blank_instance(n, Orientation::undirected);
      std::vector<WeightedEdge> edges;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const std::uint64_t h = hash_pair(derive_seed(777, seed * 16 + n), i, j);
          if ((h & 3) == 0) continue;  // drop a quarter of the edges
          const double w = exp1_from_hash(h);
          set_edge(g, i, j, w);
          edges.push_back({i, j, w});
        }
      const OracleBest oracle = oracle_optimum(g);
      const SolveResult re = exact_undirected_min_mean_cycle(n, edges);
      if (oracle.mean == kInf) {
        CHECK(re.min_mean == kInf);
        CHECK(re.witness.vertices.empty());
      } else {
        CHECK(re.min_mean == doctest::Approx(oracle.mean).epsilon(1e-9));
        const Cycle wit = make_cycle(re.witness.vertices, g);
        CHECK(wit.mean_weight() == doctest::Approx(re.min_mean).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("trees and too-small inputs report no cycle") {
  std::vector<WeightedEdge> star{{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 3.0}, {0, 4, 4.0}};
  CHECK(exact_undirected_min_mean_cycle(5, star).min_mean == kInf);
  CHECK(exact_undirected_min_mean_cycle(2, {{0, 1, 1.0}}).min_mean == kInf);
}

TEST_CASE("input validation rejects malformed edges") {
  CHECK_THROWS_AS(
      (void)exact_undirected_min_mean_cycle(3, {{0, 3, 1.0}, {0, 1, 1.0}, {1, 2, 1.0}}),
      std::invalid_argument);
  CHECK_THROWS_AS((void)exact_undirected_min_mean_cycle(3, {{0, 0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)exact_undirected_min_mean_cycle(3, {{0, 1, -0.5}}),
                  std::invalid_argument);
}

TEST_CASE("bridged triangle pair resolves to a simple triangle") {
  const GraphInstance g = dumbbell();
  const SolveResult r = exact_undirected_min_mean_cycle(g.n, all_edges(g));
  CHECK(r.min_mean == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.witness.length() == 3);
}

TEST_CASE("uniform weights certify on the first pass") {
  GraphInstance g = blank_instance(6, Orientation::undirected);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) set_edge(g, i, j, 1.0);
  const SolveResult r = exact_undirected_min_mean_cycle(6, all_edges(g));
  CHECK(r.min_mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("repeat solves are deterministic") {
  const GraphInstance g = sample_complete(60, Orientation::undirected, 4242);
  const SolveResult a = exact_undirected_min_mean_cycle(g.n, all_edges(g));
  const SolveResult b = exact_undirected_min_mean_cycle(g.n, all_edges(g));
  CHECK(a.min_mean == b.min_mean);
  CHECK(a.witness.vertices == b.witness.vertices);
}

} // TEST_SUITE("engine")

TEST_SUITE("census") {

TEST_CASE("zero budget counts nothing but keeps all lengths") {
  const GraphInstance g = sample_complete(12, Orientation::directed, 5);
  const LightCycleCensus census = count_light_cycles(g, 0.0, 5);
  REQUIRE(census.counts.size() == 4);
  for (const auto& [k, cnt] : census.counts) {
    CHECK(k >= 2);
    CHECK(k <= 5);
    CHECK(cnt == 0);
  }
}

TEST_CASE("length bound below the shortest cycle is rejected") {
  const GraphInstance gd = sample_complete(5, Orientation::directed, 5);
  CHECK_THROWS_AS((void)count_light_cycles(gd, 1.0, 1), std::invalid_argument);
  const GraphInstance gu = sample_complete(5, Orientation::undirected, 5);
  CHECK_THROWS_AS((void)count_light_cycles(gu, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)count_light_cycles_sampled(5, Orientation::undirected, 5, 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("counts match enumeration filtered by the lightness predicate") {
  for (const Orientation o : {Orientation::directed, Orientation::undirected}) {
    for (int n = 4; n <= 7; ++n) {
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const GraphInstance g = sample_complete(n, o, derive_seed(9000, seed * 16 + n));
        for (const double c : {0.3, 1.0, 3.0, 10.0}) {
          const int k_max = n;
          const LightCycleCensus census = count_light_cycles(g, c, k_max);
          CHECK(census.counts == oracle_census(g, c, k_max));
        }
      }
    }
  }
}

TEST_CASE("boundary cycle counts as light under the documented slack") {
  const GraphInstance g = undirected3(0.4, 0.3, 0.3);  // triangle total exactly 1.0
  const LightCycleCensus census = count_light_cycles(g, 1.0, 3);
  CHECK(census.counts.at(3) == 1);
}

TEST_CASE("counts grow with budget and with the length bound") {
  const GraphInstance g = sample_complete(30, Orientation::directed, 77);
  LightCycleCensus prev = count_light_cycles(g, 0.5, 6);
  for (const double c : {1.0, 2.0, 4.0}) {
    const LightCycleCensus cur = count_light_cycles(g, c, 6);
    for (const auto& [k, cnt] : cur.counts) CHECK(cnt >= prev.counts.at(k));
    prev = cur;
  }
  const LightCycleCensus small = count_light_cycles(g, 2.0, 4);
  const LightCycleCensus big = count_light_cycles(g, 2.0, 6);
  for (const auto& [k, cnt] : small.counts) CHECK(big.counts.at(k) == cnt);
  CHECK(big.counts.size() == small.counts.size() + 2);
}

TEST_CASE("sampled census equals the materialized instance") {
  for (const Orientation o : {Orientation::directed, Orientation::undirected}) {
    for (const int n : {30, 200}) {
      const std::uint64_t seed = derive_seed(321, n);
      const GraphInstance g = sample_complete(n, o, seed);
      const double c = 1.0;
      const int k_max = 6;
      const LightCycleCensus a = count_light_cycles(g, c, k_max);
      const LightCycleCensus b = count_light_cycles_sampled(n, o, seed, c, k_max);
      CHECK(a.counts == b.counts);
      CHECK(b.c == c);
      CHECK(b.k_max == k_max);
    }
  }
}

TEST_CASE("sampled census validates its instance size") {
  CHECK_THROWS_AS((void)count_light_cycles_sampled(1, Orientation::directed, 0, 1.0, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)count_light_cycles_sampled(2, Orientation::undirected, 0, 1.0, 3),
                  std::invalid_argument);
}

} // TEST_SUITE("census")
