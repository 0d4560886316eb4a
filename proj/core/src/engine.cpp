#include "meancycle/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "meancycle/matching.hpp"

namespace meancycle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

struct CandidateCycle {
  std::vector<int> verts;
  double total = kInf;

  bool found() const { return !verts.empty(); }
  double mean() const { return total / static_cast<double>(verts.size()); }
};

// keeps the smaller mean; cross-multiplied so neither side is divided
void consider(CandidateCycle& best, std::vector<int> verts, double total) {
  if (!best.found() ||
      total * static_cast<double>(best.verts.size()) < best.total * static_cast<double>(verts.size()))
    best = CandidateCycle{std::move(verts), total};
}

// first cycle closed by ascending-weight forest insertion
CandidateCycle kruskal_cycle(int n, const std::vector<WeightedEdge>& edges,
                             const std::vector<int>& order) {
  DisjointSets ds(n);
  std::vector<std::vector<std::pair<int, int>>> forest(n);  // (neighbor, edge id)
  for (int id : order) {
    const WeightedEdge& e = edges[id];
    if (ds.unite(e.u, e.v)) {
      forest[e.u].push_back({e.v, id});
      forest[e.v].push_back({e.u, id});
      continue;
    }
    std::vector<int> par(n, -1), pare(n, -1);
    std::vector<int> bfs{e.u};
    par[e.u] = e.u;
    for (std::size_t i = 0; i < bfs.size() && par[e.v] < 0; ++i)
      for (auto [y, eid] : forest[bfs[i]])
        if (par[y] < 0) {
          par[y] = bfs[i];
          pare[y] = eid;
          bfs.push_back(y);
        }
    std::vector<int> verts;
    double total = e.w;
    for (int x = e.v; x != e.u; x = par[x]) {
      verts.push_back(x);
      total += edges[pare[x]].w;
    }
    verts.push_back(e.u);
    return CandidateCycle{std::move(verts), total};
  }
  return {};
}

// best triangle among the lightest edges; cheap incumbent sharpening that
// keeps the negative mass of the first ratio round small
void light_triangles(int n, const std::vector<WeightedEdge>& edges, const std::vector<int>& order,
                     CandidateCycle& best) {
  const std::size_t take = std::min(order.size(), static_cast<std::size_t>(3) * n);
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (std::size_t i = 0; i < take; ++i) {
    const WeightedEdge& e = edges[order[i]];
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  for (std::size_t i = 0; i < take; ++i) {
    const WeightedEdge& e = edges[order[i]];
    const auto& au = adj[e.u];
    const auto& av = adj[e.v];
    std::size_t p = 0, q = 0;
    while (p < au.size() && q < av.size()) {
      if (au[p].first < av[q].first)
        ++p;
      else if (av[q].first < au[p].first)
        ++q;
      else {
        const int x = au[p].first;
        if (x != e.u && x != e.v) consider(best, {e.u, e.v, x}, e.w + au[p].second + av[q].second);
        ++p;
        ++q;
      }
    }
  }
}

// peels every simple cycle out of an even-degree edge set and returns the
// one with the smallest mean; a revisited stack vertex closes a cycle
CandidateCycle peel_best(int n, const std::vector<WeightedEdge>& edges, const std::vector<int>& J) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (other endpoint, J-local id)
  for (std::size_t i = 0; i < J.size(); ++i) {
    const WeightedEdge& e = edges[J[i]];
    adj[e.u].push_back({e.v, static_cast<int>(i)});
    adj[e.v].push_back({e.u, static_cast<int>(i)});
  }
  std::vector<char> used(J.size(), 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<int> pos(n, -1);
  std::vector<int> sv, se;
  CandidateCycle best;
  for (std::size_t i = 0; i < J.size(); ++i) {
    const int start = edges[J[i]].u;
    if (cursor[start] >= adj[start].size()) continue;
    sv.assign(1, start);
    se.assign(1, -1);
    pos[start] = 0;
    while (!sv.empty()) {
      const int v = sv.back();
      std::size_t& cur = cursor[v];
      while (cur < adj[v].size() && used[adj[v][cur].second]) ++cur;
      if (cur == adj[v].size()) {
        // even degrees strand the walk only back at its origin
        if (sv.size() != 1) throw std::logic_error("cycle peel stranded off origin");
        pos[v] = -1;
        sv.pop_back();
        se.pop_back();
        break;
      }
      const auto [u, lid] = adj[v][cur];
      used[lid] = 1;
      if (pos[u] >= 0) {
        const std::size_t base = static_cast<std::size_t>(pos[u]);
        double total = edges[J[lid]].w;
        for (std::size_t t = base + 1; t < sv.size(); ++t) total += edges[J[se[t]]].w;
        if (sv.size() - base < 3) throw std::logic_error("cycle peel produced a 2-cycle");
        consider(best, std::vector<int>(sv.begin() + base, sv.end()), total);
        for (std::size_t t = base + 1; t < sv.size(); ++t) pos[sv[t]] = -1;
        sv.resize(base + 1);
        se.resize(base + 1);
      } else {
        pos[u] = static_cast<int>(sv.size());
        sv.push_back(u);
        se.push_back(lid);
      }
    }
  }
  return best;
}

SolveResult finish(const CandidateCycle& inc) {
  SolveResult r;
  r.min_mean = inc.mean();
  r.witness.vertices = canonical_vertices(inc.verts, Orientation::undirected);
  r.witness.total_weight = inc.total;
  r.solver = SolverKind::karp;  // engine backs the walk-DP entry points; callers relabel
  r.certified_exact = true;
  return r;
}

SolveResult acyclic_result() {
  SolveResult r;
  r.min_mean = kInf;
  r.solver = SolverKind::karp;
  r.certified_exact = true;
  return r;
}

} // namespace

SolveResult exact_undirected_min_mean_cycle(int n, const std::vector<WeightedEdge>& edges) {
  const std::size_t m = edges.size();
  for (const WeightedEdge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v)
      throw std::invalid_argument("engine: edge endpoints out of range");
    if (!(e.w >= 0.0) || !std::isfinite(e.w))
      throw std::invalid_argument("engine: edge weights must be finite and nonnegative");
  }
  if (n < 3 || m < 3) return acyclic_result();

  std::vector<int> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return edges[a].w != edges[b].w ? edges[a].w < edges[b].w : a < b;
  });
  std::vector<double> sorted_w(m);
  for (std::size_t i = 0; i < m; ++i) sorted_w[i] = edges[order[i]].w;

  CandidateCycle inc = kruskal_cycle(n, edges, order);
  if (!inc.found()) return acyclic_result();
  light_triangles(n, edges, order, inc);

  std::vector<double> dist(n);
  std::vector<char> done(n);
  std::vector<int> head(n + 1), term_index(n, -1);

  for (int iter = 0; iter < 200; ++iter) {
    const double mu = inc.mean();

    std::vector<int> eneg;
    double p_mass = 0.0;
    std::vector<int> degree(n, 0);
    for (std::size_t i = 0; i < m; ++i)
      if (edges[i].w < mu) {
        eneg.push_back(static_cast<int>(i));
        p_mass += mu - edges[i].w;
        ++degree[edges[i].u];
        ++degree[edges[i].v];
      }
    if (eneg.empty()) return finish(inc);  // no edge below mu: every cycle means at least mu

    std::vector<int> terms;
    for (int v = 0; v < n; ++v)
      if (degree[v] & 1) terms.push_back(v);
    const std::size_t nt = terms.size();
    const double eta =
        1e-12 * (1.0 + p_mass) + (static_cast<double>(nt) + 2.0) * (p_mass + 1.0) * 0x1.0p-40;

    double join_value = 0.0;
    std::vector<std::pair<int, int>> matched_pairs;  // terminal indices, i < mate
    std::vector<std::vector<int>> parent_edge;       // per terminal, reaching-edge ids
    std::vector<double> metric;                      // nt x nt terminal distances

    if (!terms.empty()) {
      std::fill(term_index.begin(), term_index.end(), -1);
      for (std::size_t i = 0; i < nt; ++i) term_index[terms[i]] = static_cast<int>(i);

      // Distance cap ladder: entries capped at C dominate the true metric
      // from below, so a matching that touches no capped entry is optimal.
      // The last rung C = P is unconditionally safe: a pairing inside each
      // negative component costs at most P, and every negative edge has
      // |w - mu| at most its component mass, so those paths survive the
      // edge slice. The rung carries relative slack because both the slice
      // bound and the accumulated path costs can overshoot P by rounding.
      const double cap_limit = p_mass * (1.0 + 1e-9);
      double cap = std::min(cap_limit, std::max(16.0 * p_mass / static_cast<double>(nt), 8.0 * mu));
      for (;;) {
        const bool last_rung = cap >= cap_limit;
        const auto lo = std::lower_bound(sorted_w.begin(), sorted_w.end(), mu - cap) -
                        sorted_w.begin();
        const auto hi = std::upper_bound(sorted_w.begin(), sorted_w.end(), mu + cap) -
                        sorted_w.begin();

        std::fill(head.begin(), head.end(), 0);
        for (auto i = lo; i < hi; ++i) {
          const WeightedEdge& e = edges[order[i]];
          ++head[e.u + 1];
          ++head[e.v + 1];
        }
        for (int v = 0; v < n; ++v) head[v + 1] += head[v];
        std::vector<int> fill = head;
        std::vector<int> adj_to(2 * (hi - lo)), adj_eid(2 * (hi - lo));
        std::vector<double> adj_cost(2 * (hi - lo));
        for (auto i = lo; i < hi; ++i) {
          const int id = order[i];
          const WeightedEdge& e = edges[id];
          const double c = std::abs(e.w - mu);
          adj_to[fill[e.u]] = e.v;
          adj_eid[fill[e.u]] = id;
          adj_cost[fill[e.u]++] = c;
          adj_to[fill[e.v]] = e.u;
          adj_eid[fill[e.v]] = id;
          adj_cost[fill[e.v]++] = c;
        }

        metric.assign(nt * nt, kInf);
        parent_edge.assign(nt, {});
        using Item = std::pair<double, int>;
        for (std::size_t s = 0; s < nt; ++s) {
          std::fill(dist.begin(), dist.end(), kInf);
          std::fill(done.begin(), done.end(), 0);
          auto& par = parent_edge[s];
          par.assign(n, -1);
          std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
          dist[terms[s]] = 0.0;
          heap.push({0.0, terms[s]});
          std::size_t settled_terms = 0;
          while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (done[v]) continue;
            if (d > cap) break;
            done[v] = 1;
            if (term_index[v] >= 0) {
              metric[s * nt + term_index[v]] = d;
              if (++settled_terms == nt) break;
            }
            for (int a = head[v]; a < head[v + 1]; ++a) {
              const double nd = d + adj_cost[a];
              if (nd < dist[adj_to[a]]) {
                dist[adj_to[a]] = nd;
                par[adj_to[a]] = adj_eid[a];
                heap.push({nd, adj_to[a]});
              }
            }
          }
        }

        const double cap_entry = last_rung ? p_mass + 1.0 : cap;
        std::vector<std::vector<double>> mat(nt, std::vector<double>(nt, 0.0));
        for (std::size_t i = 0; i < nt; ++i)
          for (std::size_t j = i + 1; j < nt; ++j) {
            const double d = std::min(metric[i * nt + j], metric[j * nt + i]);
            mat[i][j] = mat[j][i] = std::isfinite(d) ? d : cap_entry;
          }

        const MatchingResult match = min_weight_perfect_matching(mat);
        bool capped_used = false;
        matched_pairs.clear();
        for (std::size_t i = 0; i < nt; ++i) {
          const std::size_t j = static_cast<std::size_t>(match.mate[i]);
          if (j <= i) continue;
          matched_pairs.push_back({static_cast<int>(i), static_cast<int>(j)});
          if (!std::isfinite(std::min(metric[i * nt + j], metric[j * nt + i]))) capped_used = true;
        }
        if (!capped_used) {
          join_value = match.weight;
          break;
        }
        if (last_rung)
          throw std::logic_error("engine: optimal pairing escaped the proven distance cap");
        cap = std::min(8.0 * cap, cap_limit);
      }
    }

    if (join_value - p_mass >= -eta) return finish(inc);

    // flip the matched shortest paths against the negative set; the result
    // is even everywhere and strictly negative under w - mu
    std::vector<char> parity(m, 0);
    for (int id : eneg) parity[id] ^= 1;
    for (auto [i, j] : matched_pairs) {
      std::size_t src = i, dst = j;
      if (!std::isfinite(metric[src * nt + dst])) std::swap(src, dst);
      for (int x = terms[dst]; x != terms[src];) {
        const int eid = parent_edge[src][x];
        parity[eid] ^= 1;
        x = edges[eid].u == x ? edges[eid].v : edges[eid].u;
      }
    }
    std::vector<int> flipped;
    for (std::size_t i = 0; i < m; ++i)
      if (parity[i]) flipped.push_back(static_cast<int>(i));

    CandidateCycle best = peel_best(n, edges, flipped);
    if (!best.found() || best.mean() >= mu - 1e-15 * (1.0 + mu)) return finish(inc);
    inc = best;
  }
  throw std::logic_error("engine: ratio search failed to converge");
}

} // namespace meancycle
