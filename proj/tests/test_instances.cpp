#include <doctest.h>

#include <cmath>
#include <cstring>
#include <set>
#include <sstream>
#include <vector>

#include "meancycle/cycle.hpp"
#include "meancycle/graph.hpp"
#include "meancycle/rng.hpp"

using namespace meancycle;

namespace {

// quadratic reference: checks every (start, len) window by direct summation
bool uniform_ref(const std::vector<double>& x, double A, double b) {
  const int L = static_cast<int>(x.size());
  for (int a = 0; a < L; ++a)
    for (int len = 1; len <= L; ++len) {
      double s = 0.0;
      for (int t = 0; t < len; ++t) s += x[(a + t) % L];
      if (s > (len + A) * b * (1.0 + 1e-12)) return false;
    }
  return true;
}

std::vector<double> random_weights(std::uint64_t seed, int L) {
  std::vector<double> x(L);
  for (int i = 0; i < L; ++i) x[i] = exp1_from_hash(hash_pair(seed, 77, static_cast<std::uint64_t>(i)));
  return x;
}

GraphInstance ring_instance(const std::vector<double>& ring, double filler) {
  GraphInstance g;
  g.n = static_cast<int>(ring.size());
  g.orientation = Orientation::undirected;
  g.seed = 0;
  g.w.assign(static_cast<std::size_t>(g.n) * g.n, filler);
  for (int i = 0; i < g.n; ++i) {
    const int j = (i + 1) % g.n;
    g.w[static_cast<std::size_t>(i) * g.n + j] = ring[i];
    g.w[static_cast<std::size_t>(j) * g.n + i] = ring[i];
  }
  return g;
}

} // namespace

TEST_SUITE("instances") {

TEST_CASE("sampling is deterministic and counter-based") {
  const auto a = sample_complete(17, Orientation::directed, 42);
  const auto b = sample_complete(17, Orientation::directed, 42);
  REQUIRE(a.w.size() == b.w.size());
  CHECK(std::memcmp(a.w.data(), b.w.data(), a.w.size() * sizeof(double)) == 0);
  const auto c = sample_complete(17, Orientation::directed, 43);
  CHECK(a.w != c.w);
  // edge value depends only on (seed, i, j), not on n
  const auto big = sample_complete(40, Orientation::directed, 42);
  CHECK(a.weight(3, 11) == big.weight(3, 11));
}

TEST_CASE("smallest legal instances") {
  const auto g = sample_complete(2, Orientation::directed, 7);
  CHECK(g.weight(0, 1) > 0.0);
  CHECK(g.weight(1, 0) > 0.0);
  CHECK(g.weight(0, 1) != g.weight(1, 0));
  CHECK(std::isinf(g.weight(0, 0)));

  const auto u = sample_complete(5, Orientation::undirected, 7);
  std::set<double> values;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) {
      CHECK(u.weight(i, j) == u.weight(j, i));
      CHECK(u.weight(i, j) > 0.0);
      values.insert(u.weight(i, j));
    }
  CHECK(values.size() == 10);
}

TEST_CASE("minimum size is enforced") {
  CHECK_THROWS_AS(sample_complete(1, Orientation::directed, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_complete(2, Orientation::undirected, 0), std::invalid_argument);
  CHECK_NOTHROW(sample_complete(2, Orientation::directed, 0));
  CHECK_NOTHROW(sample_complete(3, Orientation::undirected, 0));
}

TEST_CASE("sample mean of a million exponential draws is near one") {
  const auto g = sample_complete(1001, Orientation::directed, 20240901);
  double sum = 0.0;
  std::size_t count = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      if (i != j) {
        sum += g.weight(i, j);
        ++count;
      }
  CHECK(count == 1001000u);
  const double mean = sum / static_cast<double>(count);
  CHECK(mean > 0.997);
  CHECK(mean < 1.003);
}

TEST_CASE("unit draws stay strictly inside (0,1)") {
  CHECK(to_unit(0) > 0.0);
  CHECK(to_unit(~0ull) < 1.0);
  CHECK(exp1_from_hash(~0ull) > 0.0);
  CHECK(std::isfinite(exp1_from_hash(0)));
}

TEST_CASE("derived trial seeds differ") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t t = 0; t < 1000; ++t) seeds.insert(derive_seed(99, t));
  CHECK(seeds.size() == 1000);
}

TEST_CASE("canonical form fixes rotation and direction") {
  CHECK(canonical_vertices({2, 0, 1}, Orientation::directed) == std::vector<int>{0, 1, 2});
  CHECK(canonical_vertices({5, 3, 9}, Orientation::directed) == std::vector<int>{3, 9, 5});
  // undirected: direction flips so the second id is smaller than the last
  CHECK(canonical_vertices({0, 2, 1}, Orientation::undirected) == std::vector<int>{0, 1, 2});
  CHECK(canonical_vertices({4, 7, 2, 9}, Orientation::undirected) == std::vector<int>{2, 7, 4, 9});

  const auto g = sample_complete(6, Orientation::undirected, 3);
  const auto a = make_cycle({1, 4, 2, 5}, g);
  const auto b = make_cycle({5, 2, 4, 1}, g);
  const auto c = make_cycle({2, 5, 1, 4}, g);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.total_weight == doctest::Approx(b.total_weight).epsilon(1e-15));
}

TEST_CASE("cycle construction validates input") {
  const auto g = sample_complete(5, Orientation::undirected, 1);
  CHECK_THROWS_AS(make_cycle({0, 1}, g), std::invalid_argument);          // undirected needs 3
  CHECK_THROWS_AS(make_cycle({0, 1, 1}, g), std::invalid_argument);       // repeat
  CHECK_THROWS_AS(make_cycle({0, 1, 7}, g), std::invalid_argument);       // range
  const auto d = sample_complete(5, Orientation::directed, 1);
  CHECK_NOTHROW(make_cycle({0, 1}, d));
  const auto cy = make_cycle({0, 3, 1}, g);
  CHECK(cy.mean_weight() * cy.length() == doctest::Approx(cy.total_weight).epsilon(1e-12));
}

TEST_CASE("lightness threshold arithmetic") {
  Cycle cy;
  cy.vertices = {0, 1, 2};
  cy.total_weight = 0.6;
  CHECK_FALSE(is_light(cy, 0.3, 2)); // mean 0.2 vs bound 0.15
  CHECK(is_light(cy, 0.41, 2));
  CHECK_FALSE(is_light(cy, 0.0, 2)); // positive weights are never 0-light

  // exact boundary is classified light (non-strict convention)
  Cycle boundary;
  boundary.vertices = {0, 1, 2};
  boundary.total_weight = 3.0 * (std::exp(-1.0) / 100.0);
  CHECK(is_light(boundary, std::exp(-1.0), 100));
}

TEST_CASE("uniform lightness window check, crafted cases") {
  // equal weights meet every window bound exactly, any A
  std::vector<double> eq(12, 0.37);
  CHECK(uniformly_light_weights(eq, 0.0, 0.37));
  CHECK(uniformly_light_weights(eq, 3.0, 0.37));

  // slack at least L makes every window pass when b is the mean weight
  const auto xs = random_weights(5, 9);
  double W = 0.0;
  for (double x : xs) W += x;
  CHECK(uniformly_light_weights(xs, 9.0, W / 9.0));

  // one heavy edge: the length-1 window at the heavy edge violates A=0.5
  std::vector<double> spike = {3.0, 1.0, 1.0, 1.0};
  const double b = 0.25;
  for (auto& x : spike) x *= b;
  CHECK_FALSE(uniformly_light_weights(spike, 0.5, b));
  CHECK(uniform_ref({3 * b, b, b, b}, 0.5, b) == false);
  // generous slack admits the same cycle
  CHECK(uniformly_light_weights(spike, 10.0, b));
}

TEST_CASE("uniform lightness agrees with the quadratic reference") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const int L = 1 + static_cast<int>(hash_pair(seed, 1, 2) % 40);
    auto xs = random_weights(seed, L);
    double W = 0.0;
    for (double x : xs) W += x;
    for (double A : {0.0, 0.3, 1.0, 4.0, 40.0}) {
      for (double b : {W / L, 0.8, 1.3 * W / L}) {
        const bool fast = uniformly_light_weights(xs, A, b);
        const bool slow = uniform_ref(xs, A, b);
        CHECK(fast == slow);
        ++checked;
      }
    }
  }
  CHECK(checked == 120 * 15);
}

TEST_CASE("uniform lightness is scale invariant and monotone") {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    const int L = 3 + static_cast<int>(seed % 20);
    auto xs = random_weights(seed, L);
    double W = 0.0;
    for (double x : xs) W += x;
    const double b = W / L;
    const double A = 1.0 + static_cast<double>(seed % 5);
    const bool base = uniformly_light_weights(xs, A, b);
    for (double lambda : {2.0, 3.7, 1e-3}) {
      auto ys = xs;
      for (auto& x : ys) x *= lambda;
      CHECK(uniformly_light_weights(ys, A, b * lambda) == base);
    }
    if (base) {
      CHECK(uniformly_light_weights(xs, A + 2.5, b)); // monotone in A
    }
  }
}

TEST_CASE("uniformly light implies light") {
  const auto g = sample_complete(8, Orientation::undirected, 11);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto cy = make_cycle({0, 1 + static_cast<int>(s % 3), 4, 5 + static_cast<int>(s % 2)}, g);
    const double c = 0.5 + 0.1 * static_cast<double>(s % 30);
    const double A = static_cast<double>(s % 7);
    if (is_uniformly_light(cy, g, A, c, g.n)) CHECK(is_light(cy, c, g.n));
  }
}

TEST_CASE("lightness is monotone in c") {
  const auto g = sample_complete(7, Orientation::directed, 13);
  const auto cy = make_cycle({0, 2, 4}, g);
  bool prev = false;
  for (double c = 0.0; c < 40.0; c += 0.5) {
    const bool now = is_light(cy, c, g.n);
    if (prev) CHECK(now);
    prev = now;
  }
  CHECK(prev);
}

TEST_CASE("csv round trip is bit exact") {
  for (auto o : {Orientation::directed, Orientation::undirected}) {
    const auto g = sample_complete(9, o, 777);
    std::stringstream ss;
    dump_csv(g, ss);
    const auto h = load_csv(ss);
    CHECK(h.n == g.n);
    CHECK(h.orientation == g.orientation);
    CHECK(h.seed == g.seed);
    REQUIRE(h.w.size() == g.w.size());
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j)
        if (i != j) CHECK(h.weight(i, j) == g.weight(i, j));
  }
}

TEST_CASE("csv load rejects malformed input") {
  std::stringstream missing("3,undirected,5\n0,1,0x1p-2\n0,2,0x1p-2\n");
  CHECK_THROWS_AS(load_csv(missing), std::runtime_error);
  std::stringstream bad_weight("2,directed,5\n0,1,-0x1p-2\n1,0,0x1p-2\n");
  CHECK_THROWS_AS(load_csv(bad_weight), std::runtime_error);
  std::stringstream empty("");
  CHECK_THROWS_AS(load_csv(empty), std::runtime_error);
}

TEST_CASE("ring instance helper sanity") {
  const auto g = ring_instance({0.1, 0.2, 0.3, 0.4}, 9.0);
  const auto cy = make_cycle({0, 1, 2, 3}, g);
  CHECK(cy.total_weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(is_uniformly_light(cy, g, 4.0, 1.0, 4));
}

} // TEST_SUITE
