#pragma once
#include <span>
#include <vector>

#include "meancycle/graph.hpp"

namespace meancycle {

// Simple cycle, stored in canonical vertex order: rotated so the minimum
// id comes first; undirected cycles additionally pick the direction that
// makes the second id smaller than the last. Two cycles are equal iff
// their canonical vertex sequences are equal.
struct Cycle {
  std::vector<int> vertices;
  double total_weight = 0.0;

  int length() const { return static_cast<int>(vertices.size()); }
  double mean_weight() const { return total_weight / length(); }
};

bool operator==(const Cycle& a, const Cycle& b);

std::vector<int> canonical_vertices(std::vector<int> v, Orientation orientation);

// Validates distinctness and minimum length (2 directed, 3 undirected),
// canonicalizes, and recomputes the total weight from the instance.
Cycle make_cycle(std::vector<int> vertices, const GraphInstance& g);

std::vector<double> cycle_edge_weights(const Cycle& cycle, const GraphInstance& g);

// Mean weight at most c/n. Non-strict, with a 1e-12 relative slack so
// exact-boundary constructions are classified as light under rounding.
bool is_light(const Cycle& cycle, double c, int n);

// Core windowed check with per-edge bound b = c/n: every cyclic window of
// consecutive edges, length len in 1..L, must weigh at most (len + A) * b.
// O(L) via centered prefix sums: a window violates iff its centered sum
// exceeds A*b, and max window sums come from prefix range scans.
bool uniformly_light_weights(std::span<const double> edge_weights, double A, double b);

// c-light and A-uniformly so: conjunction of is_light and the window check.
bool is_uniformly_light(const Cycle& cycle, const GraphInstance& g, double A, double c, int n);

} // namespace meancycle
