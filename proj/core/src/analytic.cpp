#include "meancycle/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "meancycle/quadrature.hpp"
#include "meancycle/special.hpp"

namespace meancycle {

namespace {
const double inv_e = std::exp(-1.0);
const double pi = 3.14159265358979323846;
} // namespace

int k_min(LimitVariant v) {
  return variant_orientation(v) == Orientation::undirected ? 3 : 2;
}

bool is_mean_variant(LimitVariant v) {
  return v == LimitVariant::directed_mean || v == LimitVariant::undirected_mean;
}

double variant_threshold(LimitVariant v) { return is_mean_variant(v) ? inv_e : 1.0; }

Orientation variant_orientation(LimitVariant v) {
  return (v == LimitVariant::undirected_max || v == LimitVariant::undirected_mean)
             ? Orientation::undirected
             : Orientation::directed;
}

std::string to_string(LimitVariant v) {
  switch (v) {
    case LimitVariant::undirected_max: return "undirected-max";
    case LimitVariant::directed_max: return "directed-max";
    case LimitVariant::undirected_mean: return "undirected-mean";
    case LimitVariant::directed_mean: return "directed-mean";
  }
  return "?";
}

LimitVariant variant_from_string(const std::string& s) {
  if (s == "undirected-max") return LimitVariant::undirected_max;
  if (s == "directed-max") return LimitVariant::directed_max;
  if (s == "undirected-mean") return LimitVariant::undirected_mean;
  if (s == "directed-mean") return LimitVariant::directed_mean;
  throw std::invalid_argument("unknown variant: " + s);
}

namespace {

// cancellation-free 1 - (1-s) e^s = sum_{m>=2} (m-1)/m! s^m
double one_minus_expfactor(double s) {
  double term = s * s / 2.0;  // m = 2
  double sum = term;
  for (int m = 3; m < 80; ++m) {
    term *= s / m;
    const double contrib = term * (m - 1);
    sum += contrib;
    if (contrib < sum * 1e-17) break;
  }
  return sum;
}

} // namespace

double tree_function(double c) {
  if (!(c >= 0.0) || c > inv_e * (1.0 + 1e-12))
    throw std::domain_error("tree_function: c outside [0, 1/e]");
  if (c == 0.0) return 0.0;
  // solved in terms of the ratio r = c / (1/e), so the representable
  // critical point maps to r = 1 exactly and T(1/e) returns exactly 1
  const double r = std::min(1.0, c / inv_e);
  const double d = 1.0 - r;

  if (d < 0.15) {
    // near-critical: solve 1 - (1-s) e^s = d for s = 1 - t; the root is
    // double at d = 0, where plain Newton on t - c e^t stalls at ~1e-8
    if (d <= 0.0) return 1.0;
    double s = std::sqrt(2.0 * d);
    for (int it = 0; it < 100; ++it) {
      const double h = one_minus_expfactor(s) - d;
      const double hp = s * std::exp(s);
      const double step = h / hp;
      s -= step;
      if (std::abs(step) < 1e-16 * s) break;
    }
    return 1.0 - s;
  }

  // below-root Newton on f(t) = t - r e^{t-1}; f is concave and increasing
  // here, so iterates increase monotonically without overshooting
  double t = c * (1.0 + c);
  for (int it = 0; it < 100; ++it) {
    const double e = r * std::exp(t - 1.0);
    const double f = t - e;
    const double fp = 1.0 - e;
    const double step = f / fp;
    t -= step;
    if (std::abs(step) < 1e-16 * (t + 1e-300)) break;
  }
  return t;
}

double tree_function_series(double c) {
  if (!(c >= 0.0) || c > inv_e * (1.0 + 1e-12))
    throw std::domain_error("tree_function_series: c outside [0, 1/e]");
  if (c == 0.0) return 0.0;
  const double lc = std::log(c);
  double sum = 0.0;
  for (int k = 1; k <= 20000; ++k) {
    const double term = std::exp((k - 1) * std::log(static_cast<double>(k)) -
                                 std::lgamma(static_cast<double>(k) + 1.0) + k * lc);
    sum += term;
    if (k > 4 && term < sum * 1e-17) break;
  }
  return sum;
}

double expected_light_count_limit(double c, Orientation o, bool allow_supercritical) {
  if (allow_supercritical && c > inv_e * (1.0 + 1e-12))
    return std::numeric_limits<double>::infinity();
  const double t = tree_function(c);  // throws outside [0, 1/e]
  if (o == Orientation::directed) return t - c;
  return (t - c - c * c) / 2.0;
}

double cycle_count(int n, int k, Orientation o) {
  const int kmin = o == Orientation::undirected ? 3 : 2;
  if (k < kmin || k > n) throw std::domain_error("cycle_count: k out of range");
  double falling = 1.0;
  for (int i = 0; i < k; ++i) falling *= static_cast<double>(n - i);
  const double directed_count = falling / static_cast<double>(k);
  return o == Orientation::directed ? directed_count : directed_count / 2.0;
}

double expected_light_count_exact(int n, int k, double c, Orientation o) {
  if (c < 0.0) throw std::domain_error("expected_light_count_exact: negative c");
  const double count = cycle_count(n, k, o);  // validates k
  if (c == 0.0) return 0.0;
  return count * gamma_p(static_cast<double>(k), c * k / n);
}

double limit_cdf(double c, LimitVariant v) {
  if (c < 0.0) throw std::domain_error("limit_cdf: negative c");
  switch (v) {
    case LimitVariant::directed_mean:
      if (c > inv_e) return 1.0;
      return 1.0 - std::exp(-(tree_function(c) - c));
    case LimitVariant::undirected_mean:
      if (c > inv_e) return 1.0;
      return 1.0 - std::exp(-(tree_function(c) - c - c * c) / 2.0);
    case LimitVariant::undirected_max:
      if (c >= 1.0) return 1.0;
      return 1.0 - std::sqrt(1.0 - c) * std::exp(c / 2.0 + c * c / 4.0);
    case LimitVariant::directed_max:
      if (c >= 1.0) return 1.0;
      return 1.0 - (1.0 - c) * std::exp(c);
  }
  return 0.0;
}

namespace {

// log of k^k / k!
double log_prefactor(int k) {
  const double kd = static_cast<double>(k);
  return kd * std::log(kd) - std::lgamma(kd + 1.0);
}

double pmf_directed_mean(int k) {
  const double lpf = log_prefactor(k);
  // c = (1 - u^2)/e straightens the sqrt behavior of T at the critical end
  const auto f = [&](double u) {
    const double c = (1.0 - u * u) * inv_e;
    if (c <= 0.0) return 0.0;
    const double t = tree_function(c);
    return std::exp(lpf + k * std::log(c) + c - std::log(t)) * (2.0 * u * inv_e);
  };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12).value;
}

double pmf_undirected_mean(int k) {
  const double lpf = log_prefactor(k) - std::log(2.0);
  const auto f = [&](double u) {
    const double c = (1.0 - u * u) * inv_e;
    if (c <= 0.0) return 0.0;
    const double t = tree_function(c);
    return std::exp(lpf + (k - 0.5) * std::log(c) + c / 2.0 + c * c / 2.0 - 0.5 * std::log(t)) *
           (2.0 * u * inv_e);
  };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12).value;
}

double pmf_undirected_max(int k) {
  // c = 1 - u^2 absorbs the sqrt(1-c) endpoint factor
  const auto f = [&](double u) {
    const double c = 1.0 - u * u;
    if (c <= 0.0 || u <= 0.0) return 0.0;
    return std::exp((k - 1) * std::log(c) + c / 2.0 + c * c / 4.0) * u * u;
  };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12).value;
}

double pmf_directed_max(int k) {
  const auto f = [&](double c) {
    if (c <= 0.0) return 0.0;
    return std::exp((k - 1) * std::log(c) + c) * (1.0 - c);
  };
  return integrate_adaptive(f, 0.0, 1.0, 1e-12).value;
}

} // namespace

double length_pmf(int k, LimitVariant v) {
  if (k < k_min(v)) throw std::domain_error("length_pmf: k below k_min for " + to_string(v));
  switch (v) {
    case LimitVariant::directed_mean: return pmf_directed_mean(k);
    case LimitVariant::undirected_mean: return pmf_undirected_mean(k);
    case LimitVariant::undirected_max: return pmf_undirected_max(k);
    case LimitVariant::directed_max: return pmf_directed_max(k);
  }
  return 0.0;
}

double pmf_sum(LimitVariant v) {
  switch (v) {
    case LimitVariant::directed_mean: return 1.0 - std::exp(-1.0 + inv_e);
    case LimitVariant::undirected_mean:
      return 1.0 - std::exp(-0.5 + 0.5 * inv_e + 0.5 * inv_e * inv_e);
    default: return 1.0;
  }
}

double tail_asymptote(int k, LimitVariant v) {
  if (k < k_min(v)) throw std::domain_error("tail_asymptote: k below k_min");
  const double kd = static_cast<double>(k);
  switch (v) {
    case LimitVariant::directed_mean:
      return std::exp(-1.0 + inv_e) / std::sqrt(2.0 * pi) * std::pow(kd, -1.5);
    case LimitVariant::undirected_mean:
      return std::exp(-0.5 + 0.5 * inv_e + 0.5 * inv_e * inv_e) / (2.0 * std::sqrt(2.0 * pi)) *
             std::pow(kd, -1.5);
    case LimitVariant::undirected_max:
      return std::sqrt(pi) / 4.0 * std::exp(0.75) * std::pow(kd, -1.5);
    case LimitVariant::directed_max:
      return std::exp(1.0) / (kd * kd);
  }
  return 0.0;
}

double uniform_light_probability_estimate(long long L, double A) {
  if (L < 1) throw std::domain_error("uniform_light_probability_estimate: L < 1");
  if (!(A > 0.0)) throw std::domain_error("uniform_light_probability_estimate: A <= 0");
  return std::exp(-(pi * pi / 2.0) * static_cast<double>(L) / (A * A));
}

double expected_uniform_light_count(const SupercriticalParams& p, Orientation o) {
  if (p.L1 >= p.L2) throw std::domain_error("expected_uniform_light_count: L1 >= L2");
  if (p.delta < 0.0 || !(p.A > 0.0))
    throw std::domain_error("expected_uniform_light_count: bad delta or A");
  const double log1pd = std::log1p(p.delta);
  const double band = pi * pi / 2.0 / (p.A * p.A);
  double sum = 0.0;
  for (long long L = p.L1 + 1; L <= p.L2; ++L) {
    const double Ld = static_cast<double>(L);
    const double expo = Ld * log1pd - 1.5 * std::log(Ld) - band * Ld;
    if (expo > 700.0) return std::numeric_limits<double>::infinity();
    sum += std::exp(expo);
  }
  return o == Orientation::directed ? sum : sum / 2.0;
}

UniformCountReport expected_uniform_light_count_report(const SupercriticalParams& p, Orientation o,
                                                       double n) {
  UniformCountReport rep;
  rep.count = expected_uniform_light_count(p, o);
  const double l2 = static_cast<double>(p.L2);
  const double log_ratio_term =
      std::log(2.0) + 3.0 * std::log(l2) + p.A + l2 * std::log1p(p.delta) - std::log(n);
  rep.variance_ratio_bound =
      log_ratio_term > 700.0 ? std::numeric_limits<double>::infinity()
                             : 1.0 + std::exp(log_ratio_term);
  rep.variance_precondition_ok = 3.0 * std::log(l2) + p.A - std::log(n) <= std::log(0.5);
  return rep;
}

SupercriticalBounds supercritical_bounds(int n) {
  if (n < 16) throw std::domain_error("supercritical_bounds: n < 16");
  const double ln = std::log(static_cast<double>(n));
  const double ln2 = ln * ln;
  SupercriticalBounds b;
  b.weight_upper = (1.0 + (pi * pi / 2.0) / ln2) / (std::exp(1.0) * n);
  b.length_lower = 2.0 / (pi * pi) * ln2 * std::log(ln);
  return b;
}

double brownian_band_probability(double T, double a, int terms) {
  if (!(T > 0.0) || !(a > 0.0)) throw std::domain_error("brownian_band_probability: T, a > 0");
  if (terms < 1) throw std::domain_error("brownian_band_probability: terms < 1");
  const double rate = pi * pi * T / (8.0 * a * a);
  double sum = 0.0;
  double last_term = 0.0;
  for (int j = 0; j < terms; ++j) {
    const double m = 2.0 * j + 1.0;
    last_term = (j % 2 == 0 ? 1.0 : -1.0) / m * std::exp(-m * m * rate);
    sum += last_term;
    if (std::abs(last_term) < 1e-15) break;
  }
  // terms alternate with decreasing magnitude, so the limit lies between
  // successive partial sums; backing off half the last term halves the
  // truncation bracket when the loop exits on the term budget
  const double result =
      4.0 / pi * (std::abs(last_term) < 1e-15 ? sum : sum - 0.5 * last_term);
  return std::min(1.0, std::max(0.0, result));
}

} // namespace meancycle
