#include "meancycle/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

namespace meancycle {

namespace {

// Primal-dual maximum-weight matching with blossoms, O(V^3).
//
// All arithmetic is integral. Stored weights are doubled so every
// half-integral dual step lands on the integer grid, and all free
// vertices start from one shared label; free labels then move in
// lockstep, which keeps the slack of any S-to-S edge even and the
// halved dual steps exact. Termination needs both properties.
//
// Index space is 1-based: 1..n are input vertices, n+1..2n are blossom
// slots (st[b] == 0 marks a free slot). st[x] is the surface node that
// currently contains x. S[] is the forest side: 0 even, 1 odd, -1 off
// the forest. g caches, per surface pair, one original edge of minimum
// slack; sources of cached slacks are only ever even-side vertices and
// even-side labels move uniformly, so cached argmins stay valid between
// recomputations.
struct Matcher {
  struct Edge {
    int u = 0, v = 0;
    long long w = 0;
  };

  static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

  int n = 0;
  int n2 = 0;
  int n_x = 0;
  std::vector<Edge> g;
  std::vector<long long> lab;
  std::vector<int> match, slack, st, pa, S, vis;
  std::vector<std::vector<int>> flower;
  std::vector<std::vector<int>> flower_from;
  std::deque<int> q;
  int lca_stamp = 0;

  Edge& e(int a, int b) { return g[static_cast<std::size_t>(a) * (n2 + 1) + b]; }

  long long slack_of(const Edge& ed) const { return lab[ed.u] + lab[ed.v] - ed.w; }

  void update_slack(int u, int x) {
    if (!slack[x] || slack_of(e(u, x)) < slack_of(e(slack[x], x))) slack[x] = u;
  }

  void set_slack(int x) {
    slack[x] = 0;
    for (int u = 1; u <= n; ++u)
      if (e(u, x).w > 0 && st[u] != x && S[st[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n) {
      q.push_back(x);
    } else {
      for (int f : flower[x]) q_push(f);
    }
  }

  void set_st(int x, int b) {
    st[x] = b;
    if (x > n)
      for (int f : flower[x]) set_st(f, b);
  }

  // position of child xr in the blossom cycle; reorients the cycle when
  // needed so the base-to-xr path along the list has even length
  int get_pr(int b, int xr) {
    auto& fl = flower[b];
    int pr = static_cast<int>(std::find(fl.begin(), fl.end(), xr) - fl.begin());
    if (pr % 2 == 1) {
      std::reverse(fl.begin() + 1, fl.end());
      return static_cast<int>(fl.size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match[u] = e(u, v).v;
    if (u <= n) return;
    Edge ed = e(u, v);
    int xr = flower_from[u][ed.u];
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st[match[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st[pa[xnv]]);
      u = st[pa[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++lca_stamp; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis[u] == lca_stamp) return u;
      vis[u] = lca_stamp;
      u = st[match[u]];
      if (u) u = st[pa[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n + 1;
    while (b <= n_x && st[b]) ++b;
    if (b > n_x) ++n_x;
    lab[b] = 0;
    S[b] = 0;
    match[b] = match[lca];
    flower[b].clear();
    flower[b].push_back(lca);
    for (int x = u, y; x != lca; x = st[pa[y]]) {
      flower[b].push_back(x);
      flower[b].push_back(y = st[match[x]]);
      q_push(y);
    }
    std::reverse(flower[b].begin() + 1, flower[b].end());
    for (int x = v, y; x != lca; x = st[pa[y]]) {
      flower[b].push_back(x);
      flower[b].push_back(y = st[match[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x; ++x) {
      e(b, x).w = 0;
      e(x, b).w = 0;
    }
    for (int x = 1; x <= n; ++x) flower_from[b][x] = 0;
    for (int xs : flower[b]) {
      for (int x = 1; x <= n_x; ++x)
        if (e(b, x).w == 0 || slack_of(e(xs, x)) < slack_of(e(b, x))) {
          e(b, x) = e(xs, x);
          e(x, b) = e(x, xs);
        }
      for (int x = 1; x <= n; ++x)
        if (flower_from[xs][x]) flower_from[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int x : flower[b]) set_st(x, x);
    int xr = flower_from[b][e(b, pa[b]).u];
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower[b][i];
      int xns = flower[b][i + 1];
      pa[xs] = e(xns, xs).u;
      S[xs] = 1;
      S[xns] = 0;
      slack[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    S[xr] = 1;
    pa[xr] = pa[b];
    for (int i = pr + 1; i < static_cast<int>(flower[b].size()); ++i) {
      S[flower[b][i]] = -1;
      set_slack(flower[b][i]);
    }
    st[b] = 0;
  }

  bool on_found_edge(Edge ed) {
    int u = st[ed.u], v = st[ed.v];
    if (S[v] == -1) {
      pa[v] = ed.u;
      S[v] = 1;
      int nu = st[match[v]];
      slack[v] = 0;
      slack[nu] = 0;
      S[nu] = 0;
      q_push(nu);
    } else if (S[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  // one augmentation; false when no augmenting path exists
  bool run_phase() {
    std::fill(S.begin(), S.end(), -1);
    std::fill(slack.begin(), slack.end(), 0);
    q.clear();
    for (int x = 1; x <= n_x; ++x)
      if (st[x] == x && !match[x]) {
        pa[x] = 0;
        S[x] = 0;
        q_push(x);
      }
    if (q.empty()) return false;
    for (;;) {
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (S[st[u]] == 1) continue;
        for (int v = 1; v <= n; ++v)
          if (e(u, v).w > 0 && st[u] != st[v]) {
            if (slack_of(e(u, v)) == 0) {
              if (on_found_edge(e(u, v))) return true;
            } else {
              update_slack(u, st[v]);
            }
          }
      }
      long long d = kInf;
      for (int b = n + 1; b <= n_x; ++b)
        if (st[b] == b && S[b] == 1) d = std::min(d, lab[b] / 2);
      for (int x = 1; x <= n_x; ++x)
        if (st[x] == x && slack[x]) {
          if (S[x] == -1)
            d = std::min(d, slack_of(e(slack[x], x)));
          else if (S[x] == 0)
            d = std::min(d, slack_of(e(slack[x], x)) / 2);
        }
      if (d == kInf || d < 0) throw std::logic_error("matching: dual step failed");
      // perfect-matching duals are unconstrained in sign, so no floor here;
      // the dual objective shrinks by 2d per round, bounding the total step
      // sum by n * top / 2 and keeping every label well inside long long
      for (int u = 1; u <= n; ++u) {
        if (S[st[u]] == 0)
          lab[u] -= d;
        else if (S[st[u]] == 1)
          lab[u] += d;
      }
      for (int b = n + 1; b <= n_x; ++b)
        if (st[b] == b) {
          if (S[b] == 0)
            lab[b] += 2 * d;
          else if (S[b] == 1)
            lab[b] -= 2 * d;
        }
      q.clear();
      for (int x = 1; x <= n_x; ++x)
        if (st[x] == x && slack[x] && st[slack[x]] != x && slack_of(e(slack[x], x)) == 0)
          if (on_found_edge(e(slack[x], x))) return true;
      for (int b = n + 1; b <= n_x; ++b)
        if (st[b] == b && S[b] == 1 && lab[b] == 0) expand_blossom(b);
    }
  }

  // w_max is maximized; the caller has already flipped minimization into
  // maximization with a constant shift, making every weight positive, so
  // the maximum matching is perfect whenever one exists
  std::vector<int> solve(const std::vector<std::vector<long long>>& w_max) {
    n = static_cast<int>(w_max.size());
    n2 = 2 * n;
    n_x = n;
    g.assign(static_cast<std::size_t>(n2 + 1) * (n2 + 1), Edge{});
    for (int a = 0; a <= n2; ++a)
      for (int b = 0; b <= n2; ++b) e(a, b) = Edge{a, b, 0};
    lab.assign(n2 + 1, 0);
    match.assign(n2 + 1, 0);
    slack.assign(n2 + 1, 0);
    st.assign(n2 + 1, 0);
    pa.assign(n2 + 1, 0);
    S.assign(n2 + 1, -1);
    vis.assign(n2 + 1, 0);
    flower.assign(n2 + 1, {});
    flower_from.assign(n2 + 1, std::vector<int>(n + 1, 0));
    for (int u = 1; u <= n; ++u) {
      st[u] = u;
      flower_from[u][u] = u;
    }

    long long top = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) {
          e(i + 1, j + 1).w = 2 * w_max[i][j];  // doubled grid
          top = std::max(top, w_max[i][j]);
        }
    for (int u = 1; u <= n; ++u) lab[u] = top;

    // warm start: pre-match mutually best pairs at tight labels w/2 each;
    // dual feasibility against every other edge follows from each partner
    // being a global argmax of its row
    std::vector<int> best(n + 1, 0);
    for (int u = 1; u <= n; ++u) {
      long long bw = std::numeric_limits<long long>::min();
      for (int v = 1; v <= n; ++v)
        if (v != u && e(u, v).w > bw) {
          bw = e(u, v).w;
          best[u] = v;
        }
    }
    for (int u = 1; u <= n; ++u)
      if (!match[u] && best[u] && best[best[u]] == u && !match[best[u]]) {
        int v = best[u];
        lab[u] = e(u, v).w / 2;
        lab[v] = e(u, v).w / 2;
        match[u] = v;
        match[v] = u;
      }

    for (;;) {
      bool all = true;
      for (int u = 1; u <= n; ++u)
        if (!match[u]) {
          all = false;
          break;
        }
      if (all) break;
      if (!run_phase()) throw std::logic_error("matching: no perfect matching found");
    }

    std::vector<int> mate(n, -1);
    for (int u = 1; u <= n; ++u) mate[u - 1] = match[u] - 1;
    for (int i = 0; i < n; ++i)
      if (mate[i] < 0 || mate[i] >= n || mate[i] == i || mate[mate[i]] != i)
        throw std::logic_error("matching: extracted pairing is inconsistent");
    return mate;
  }
};

void check_square_symmetric(std::size_t V, const auto& w) {
  for (std::size_t i = 0; i < V; ++i) {
    if (w[i].size() != V) throw std::invalid_argument("matching: matrix is not square");
    if (w[i][i] != 0) throw std::invalid_argument("matching: diagonal must be zero");
    for (std::size_t j = 0; j < i; ++j)
      if (w[i][j] != w[j][i]) throw std::invalid_argument("matching: matrix is not symmetric");
  }
}

} // namespace

IntMatchingResult min_weight_perfect_matching(const std::vector<std::vector<long long>>& w) {
  const std::size_t V = w.size();
  if (V % 2 != 0) throw std::invalid_argument("matching: order must be even");
  check_square_symmetric(V, w);
  constexpr long long kLimit = 1LL << 41;
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = 0; j < V; ++j)
      if (w[i][j] >= kLimit || w[i][j] <= -kLimit)
        throw std::invalid_argument("matching: weight magnitude exceeds 2^41");

  IntMatchingResult out;
  out.mate.assign(V, -1);
  if (V == 0) return out;

  // flip to maximization; the shift makes every weight >= 1, so maximum
  // matchings are perfect and minimize the original weight among them
  long long wmax = w[0][1];
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = 0; j < V; ++j)
      if (i != j) wmax = std::max(wmax, w[i][j]);
  std::vector<std::vector<long long>> flipped(V, std::vector<long long>(V, 0));
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = 0; j < V; ++j)
      if (i != j) flipped[i][j] = wmax + 1 - w[i][j];

  Matcher m;
  out.mate = m.solve(flipped);
  for (std::size_t i = 0; i < V; ++i)
    if (static_cast<std::size_t>(out.mate[i]) > i) out.weight += w[i][out.mate[i]];
  return out;
}

MatchingResult min_weight_perfect_matching(const std::vector<std::vector<double>>& w) {
  const std::size_t V = w.size();
  if (V % 2 != 0) throw std::invalid_argument("matching: order must be even");
  for (std::size_t i = 0; i < V; ++i) {
    if (w[i].size() != V) throw std::invalid_argument("matching: matrix is not square");
    for (std::size_t j = 0; j < V; ++j)
      if (!std::isfinite(w[i][j]))
        throw std::invalid_argument("matching: weights must be finite");
  }
  check_square_symmetric(V, w);

  MatchingResult out;
  out.mate.assign(V, -1);
  if (V == 0) return out;

  double max_abs = 0.0;
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = 0; j < V; ++j) max_abs = std::max(max_abs, std::abs(w[i][j]));
  const double scale = max_abs > 0.0 ? static_cast<double>(1LL << 40) / max_abs : 1.0;

  std::vector<std::vector<long long>> q(V, std::vector<long long>(V, 0));
  for (std::size_t i = 0; i < V; ++i)
    for (std::size_t j = 0; j < V; ++j)
      if (i != j) q[i][j] = std::llround(w[i][j] * scale);

  out.mate = min_weight_perfect_matching(q).mate;
  for (std::size_t i = 0; i < V; ++i)
    if (static_cast<std::size_t>(out.mate[i]) > i) out.weight += w[i][out.mate[i]];
  return out;
}

} // namespace meancycle
