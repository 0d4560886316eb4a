#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "meancycle/rng.hpp"
#include "meancycle/solver.hpp"

namespace meancycle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// weights of the edges that can appear in any counted cycle; +inf elsewhere
struct LightGrid {
  int n = 0;
  Orientation orientation = Orientation::directed;
  std::vector<double> lw;                                  // n * n
  std::vector<std::vector<std::pair<int, double>>> adj;    // ascending targets
};

void build_adjacency(LightGrid& grid) {
  grid.adj.assign(grid.n, {});
  for (int u = 0; u < grid.n; ++u)
    for (int v = 0; v < grid.n; ++v)
      if (u != v && grid.lw[static_cast<std::size_t>(u) * grid.n + v] < kInf)
        grid.adj[u].push_back({v, grid.lw[static_cast<std::size_t>(u) * grid.n + v]});
}

int min_cycle_length(Orientation o) { return o == Orientation::directed ? 2 : 3; }

// The overall budget is the loosest per-length bound; partial sums above it
// cannot complete any counted cycle. Closure re-checks the per-length bound,
// mirroring the lightness predicate including its boundary slack.
LightCycleCensus census_on_grid(const LightGrid& grid, double c, int k_max) {
  const int kmin = min_cycle_length(grid.orientation);
  LightCycleCensus out;
  out.c = c;
  out.k_max = k_max;
  for (int k = kmin; k <= k_max; ++k) out.counts[k] = 0;

  const int n = grid.n;
  const bool dir = grid.orientation == Orientation::directed;
  const double scale = c / n;
  const double loosest = scale * k_max;
  const double budget = loosest + 1e-12 * loosest;

  std::vector<char> used(n, 0);
  std::vector<int> path;
  const auto dfs = [&](auto&& self, int v, double total) -> void {
    const int s = path.front();
    const int len = static_cast<int>(path.size());
    if (len >= kmin && (dir || path[1] < v)) {
      const double wc = grid.lw[static_cast<std::size_t>(v) * n + s];
      if (wc < kInf) {
        const double bound = scale * len;
        if (total + wc <= bound + 1e-12 * bound) ++out.counts.find(len)->second;
      }
    }
    if (len == k_max) return;
    for (const auto& [x, w] : grid.adj[v]) {
      if (x <= s || used[x]) continue;
      const double nt = total + w;
      if (nt > budget) continue;
      used[x] = 1;
      path.push_back(x);
      self(self, x, nt);
      path.pop_back();
      used[x] = 0;
    }
  };
  for (int s = 0; s < n; ++s) {
    used[s] = 1;
    path.assign(1, s);
    dfs(dfs, s, 0.0);
    used[s] = 0;
  }
  return out;
}

void validate_k_max(Orientation o, int k_max) {
  if (k_max < min_cycle_length(o))
    throw std::invalid_argument("count_light_cycles: k_max below the shortest cycle length");
}

double slacked_budget(double c, int n, int k_max) {
  const double loosest = c / n * k_max;
  return loosest + 1e-12 * loosest;
}

} // namespace

LightCycleCensus count_light_cycles(const GraphInstance& g, double c, int k_max) {
  validate_k_max(g.orientation, k_max);
  LightGrid grid;
  grid.n = g.n;
  grid.orientation = g.orientation;
  grid.lw.assign(static_cast<std::size_t>(g.n) * g.n, kInf);
  const double budget = slacked_budget(c, g.n, k_max);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j && g.weight(i, j) <= budget)
        grid.lw[static_cast<std::size_t>(i) * g.n + j] = g.weight(i, j);
  build_adjacency(grid);
  return census_on_grid(grid, c, k_max);
}

LightCycleCensus count_light_cycles_sampled(int n, Orientation orientation, std::uint64_t seed,
                                            double c, int k_max) {
  if (orientation == Orientation::directed ? n < 2 : n < 3)
    throw std::invalid_argument("count_light_cycles_sampled: instance too small for a cycle");
  validate_k_max(orientation, k_max);

  LightGrid grid;
  grid.n = n;
  grid.orientation = orientation;
  grid.lw.assign(static_cast<std::size_t>(n) * n, kInf);

  // An edge survives iff its weight is at most the budget, i.e. its uniform
  // variate is at least exp(-budget). Testing the variate first skips the
  // log for almost every discarded edge; a thin conservative band falls back
  // to the exact weight comparison so the kept set matches a materialized
  // instance bit for bit.
  const double budget = slacked_budget(c, n, k_max);
  const double cheap = std::exp(-budget) * (1.0 - 1e-6);
  const auto keep_weight = [&](std::uint64_t h) {
    const double u = to_unit(h);
    if (u < cheap) return kInf;
    const double w = -std::log(u);
    return w <= budget ? w : kInf;
  };
  if (orientation == Orientation::directed) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j)
          grid.lw[static_cast<std::size_t>(i) * n + j] = keep_weight(hash_pair(seed, i, j));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double w = keep_weight(hash_pair(seed, i, j));
        grid.lw[static_cast<std::size_t>(i) * n + j] = w;
        grid.lw[static_cast<std::size_t>(j) * n + i] = w;
      }
  }
  build_adjacency(grid);
  return census_on_grid(grid, c, k_max);
}

} // namespace meancycle
