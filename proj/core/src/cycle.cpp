#include "meancycle/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace meancycle {

bool operator==(const Cycle& a, const Cycle& b) { return a.vertices == b.vertices; }

std::vector<int> canonical_vertices(std::vector<int> v, Orientation orientation) {
  if (v.empty()) return v;
  const auto mn = std::min_element(v.begin(), v.end());
  std::rotate(v.begin(), mn, v.end());
  if (orientation == Orientation::undirected && v.size() >= 3 && v.back() < v[1])
    std::reverse(v.begin() + 1, v.end());
  return v;
}

Cycle make_cycle(std::vector<int> vertices, const GraphInstance& g) {
  const std::size_t min_len = g.directed() ? 2 : 3;
  if (vertices.size() < min_len)
    throw std::invalid_argument("make_cycle: too short for " + to_string(g.orientation));
  std::vector<int> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("make_cycle: repeated vertex");
  if (sorted.front() < 0 || sorted.back() >= g.n)
    throw std::invalid_argument("make_cycle: vertex out of range");

  Cycle c;
  c.vertices = canonical_vertices(std::move(vertices), g.orientation);
  double total = 0.0;
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    const int u = c.vertices[i];
    const int v = c.vertices[(i + 1) % c.vertices.size()];
    total += g.weight(u, v);
  }
  c.total_weight = total;
  return c;
}

std::vector<double> cycle_edge_weights(const Cycle& cycle, const GraphInstance& g) {
  std::vector<double> xs(cycle.vertices.size());
  for (std::size_t i = 0; i < cycle.vertices.size(); ++i) {
    const int u = cycle.vertices[i];
    const int v = cycle.vertices[(i + 1) % cycle.vertices.size()];
    xs[i] = g.weight(u, v);
  }
  return xs;
}

bool is_light(const Cycle& cycle, double c, int n) {
  const double bound = c / n * cycle.length();
  return cycle.total_weight <= bound + 1e-12 * bound;
}

bool uniformly_light_weights(std::span<const double> edge_weights, double A, double b) {
  const std::size_t L = edge_weights.size();
  if (L == 0) return true;

  // centered increments: a window of len edges obeys the bound iff its
  // centered sum is at most A*b
  double prefix = 0.0;         // P_i
  double abs_scale = 0.0;      // for the relative slack
  double min_prefix = 0.0;     // min over P_0..P_{i-1}
  double max_prefix = 0.0;     // max over P_0..P_i
  double worst_open = -std::numeric_limits<double>::infinity();  // max P_j - min earlier
  double worst_wrap = -std::numeric_limits<double>::infinity();  // max (max earlier P) - P_j
  for (std::size_t i = 0; i < L; ++i) {
    const double y = edge_weights[i] - b;
    abs_scale += std::abs(y);
    min_prefix = std::min(min_prefix, prefix);
    prefix += y;
    worst_open = std::max(worst_open, prefix - min_prefix);
    max_prefix = std::max(max_prefix, prefix);
    worst_wrap = std::max(worst_wrap, max_prefix - prefix);
  }
  const double total = prefix;
  const double worst = std::max(worst_open, total + worst_wrap);
  const double limit = A * b;
  return worst <= limit + 1e-12 * (std::abs(limit) + abs_scale);
}

bool is_uniformly_light(const Cycle& cycle, const GraphInstance& g, double A, double c, int n) {
  if (!is_light(cycle, c, n)) return false;
  const auto xs = cycle_edge_weights(cycle, g);
  return uniformly_light_weights(xs, A, c / n);
}

} // namespace meancycle
