#pragma once
#include <cstdint>
#include <map>
#include <string>

#include "meancycle/cycle.hpp"
#include "meancycle/graph.hpp"

namespace meancycle {

enum class SolverKind { karp, howard, brute_force, pruned_karp, threshold };

std::string to_string(SolverKind k);

// Result of a cycle-objective solve. min_mean holds the minimized mean
// weight, except for the threshold solver (min_max_cycle) where it holds
// the minimized maximum edge weight instead; the witness cycle attains the
// reported value either way.
struct SolveResult {
  double min_mean = 0.0;
  Cycle witness;
  SolverKind solver = SolverKind::karp;
  bool certified_exact = false;
};

// Exact minimum mean-weight cycle via the k-edge walk dynamic program
// min_v max_k (D_m(v) - D_k(v))/(m - k), run per strongly connected
// component. Undirected instances go through the bidirected walk graph with
// immediate edge reuse forbidden; a walk optimum that no simple cycle
// attains is re-solved exactly (see engine.hpp), so the result is always
// the simple-cycle optimum.
SolveResult karp_min_mean_cycle(const GraphInstance& g);

// Same optimum via policy iteration on the mean-payoff formulation:
// value-change tolerance 1e-12 while iterating, then an exact improvement
// sweep so termination implies optimality.
SolveResult howard_min_mean_cycle(const GraphInstance& g);

// Exhaustive minimum over every simple cycle, enumerated once each in
// canonical form. Refuses n > 9.
SolveResult brute_force_min_mean(const GraphInstance& g);

// Upper-bounds the optimum with a cheap cycle, prunes every edge heavier
// than n times that bound, and solves the remaining subgraph. A cycle
// beating the optimum would need every edge below n·μ* ≤ n·μ̂, so the
// certificate holds whenever the bound came from a real cycle.
SolveResult pruned_solve(const GraphInstance& g);

// Minimum over cycles of the maximum edge weight: insert edges in
// ascending weight order and stop at the first cycle. min_mean holds the
// min-max weight; solver is SolverKind::threshold.
SolveResult min_max_cycle(const GraphInstance& g);

struct LightCycleCensus {
  std::map<int, long long> counts;  // cycle length -> number of c-light cycles
  double c = 0.0;
  int k_max = 0;
};

// Exact per-length counts of cycles with mean weight at most c/n (the same
// boundary slack as is_light), for lengths up to k_max, via canonical DFS
// pruned at the loosest valid weight budget c·k_max/n.
LightCycleCensus count_light_cycles(const GraphInstance& g, double c, int k_max);

// Census of sample_complete(n, orientation, seed) without materializing
// the instance: only edges under the weight budget are kept, and the
// budget test needs no log for the ~e^{-B} share of draws that fail it.
LightCycleCensus count_light_cycles_sampled(int n, Orientation orientation, std::uint64_t seed,
                                            double c, int k_max);

} // namespace meancycle
