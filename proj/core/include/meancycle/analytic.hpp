#pragma once
#include <string>

#include "meancycle/graph.hpp"

namespace meancycle {

// the four limit laws: orientation x objective
enum class LimitVariant { undirected_max, directed_max, undirected_mean, directed_mean };

int k_min(LimitVariant v);                    // 3 undirected, 2 directed
bool is_mean_variant(LimitVariant v);
double variant_threshold(LimitVariant v);     // 1/e for mean, 1 for max
Orientation variant_orientation(LimitVariant v);
std::string to_string(LimitVariant v);
LimitVariant variant_from_string(const std::string& s);

// T(c): the root of t = c * e^t in [0,1] for 0 <= c <= 1/e. The negative
// real branch of Lambert W appears only through W(-c) = -T(c); no separate
// evaluator. Absolute residual |T - c e^T| stays near machine epsilon,
// including at the critical point where the root is double.
double tree_function(double c);

// series oracle: sum of k^{k-1} c^k / k!; converges usefully away from the
// critical point, used for cross-checks
double tree_function_series(double c);

// expected number of c-light cycles, limit in n: T(c) - c directed,
// (T(c) - c - c^2)/2 undirected. Outside [0, 1/e] the limit is infinite;
// opting in via allow_supercritical returns +inf instead of throwing.
double expected_light_count_limit(double c, Orientation o, bool allow_supercritical = false);

// number of k-cycles in the complete graph on n vertices
double cycle_count(int n, int k, Orientation o);

// exact finite-n expected number of c-light k-cycles:
// N_k * P(Gamma(k) <= c k / n)
double expected_light_count_exact(int n, int k, double c, Orientation o);

// P(scaled optimum <= c) in the n -> infinity limit
double limit_cdf(double c, LimitVariant v);

// limiting probability that the optimal cycle has length exactly k,
// by adaptive quadrature of the variant's density integral; the mean
// variants are regularized at the critical endpoint by the substitution
// c = (1 - u^2)/e before integrating
double length_pmf(int k, LimitVariant v);

// closed-form total mass of finite lengths: 1 for max variants, the
// left limit of the cdf at 1/e for mean variants
double pmf_sum(LimitVariant v);

// leading-order large-k pmf: constant * k^{-3/2}, except directed max
// which decays like e * k^{-2}
double tail_asymptote(int k, LimitVariant v);

// leading-order probability that a length-L cycle with fixed total weight
// is A-uniformly light: exp(-(pi^2/2) L / A^2)
double uniform_light_probability_estimate(long long L, double A);

struct SupercriticalParams {
  double A = 0.0;      // uniformity slack
  double delta = 0.0;  // relative excess of the lightness level over 1/e
  long long L = 0;     // single-length parameter, kept for configuration only
  long long L1 = 0;    // window lower end (exclusive)
  long long L2 = 0;    // window upper end (inclusive)
};

// expected number of A-uniformly (1+delta)/e-light cycles with length in
// (L1, L2], leading order; term exponents are assembled in log space
double expected_uniform_light_count(const SupercriticalParams& p, Orientation o);

struct UniformCountReport {
  double count = 0.0;
  double variance_ratio_bound = 0.0;  // 1 + 2 L2^3 e^A (1+delta)^{L2} / n
  bool variance_precondition_ok = false;  // L2^3 e^A / n <= 1/2
};
UniformCountReport expected_uniform_light_count_report(const SupercriticalParams& p, Orientation o,
                                                       double n);

struct SupercriticalBounds {
  double weight_upper = 0.0;   // (1 + (pi^2/2)/ln^2 n) / (e n)
  double length_lower = 0.0;   // (2/pi^2) ln^2 n * ln ln n
};
// leading-order bounds; o(1) corrections dropped. Natural logs throughout;
// n >= 16 keeps ln ln n positive.
SupercriticalBounds supercritical_bounds(int n);

// P(max_{t<=T} |B_t| < a) via the alternating Fourier series, truncated at
// `terms` terms or when a term falls below 1e-15
double brownian_band_probability(double T, double a, int terms);

} // namespace meancycle
