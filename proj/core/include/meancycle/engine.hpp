#pragma once
#include <vector>

#include "meancycle/solver.hpp"

namespace meancycle {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

// Exact minimum mean-weight simple cycle of an arbitrary undirected graph.
// Ratio search over even-degree edge sets: for a candidate mean μ, the
// most negative (w - μ)-weight even subgraph is the negative edge set
// corrected by a minimum T-join on its odd vertices, computed as a perfect
// matching over shortest-path distances in |w - μ|. A nonnegative optimum
// certifies μ; otherwise the subgraph decomposes into simple cycles and
// the best of them becomes the next candidate. Distance queries are capped
// adaptively: a matching that avoids capped entries is provably optimal,
// and the cap never needs to exceed the total negative mass P because no
// optimal pairing can cost more than P.
//
// The certification guard absorbs matching quantization: the reported mean
// is exact within roughly (|T|/2 + 2)(P + 1) * 2^-40 / 3 absolute error,
// far below the 1e-9 cross-solver tolerance at every scale used here.
// Returns min_mean = +infinity and an empty witness on acyclic inputs.
SolveResult exact_undirected_min_mean_cycle(int n, const std::vector<WeightedEdge>& edges);

} // namespace meancycle
