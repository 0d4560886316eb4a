#include "meancycle/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "meancycle/cycle.hpp"
#include "meancycle/rng.hpp"

namespace meancycle {

namespace {

// Work items are claimed from a shared counter, but every item writes only
// its own slot and draws only from its own counter-based stream, so the
// schedule cannot leak into the results. The first exception wins and is
// rethrown on the calling thread after everyone drains.
template <typename Body>
void parallel_for(long long count, int workers, Body&& body) {
  const int w = std::max(1, workers);
  if (w == 1 || count < 2) {
    for (long long t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<long long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto drain = [&] {
    for (long long t; (t = next.fetch_add(1, std::memory_order_relaxed)) < count;) {
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(w - 1);
  for (int i = 1; i < w; ++i) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

double binomial_std_error(double p, double trials) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / trials);
}

}  // namespace

std::string to_string(Objective o) { return o == Objective::mean ? "mean" : "max"; }

Objective objective_from_string(const std::string& s) {
  if (s == "mean") return Objective::mean;
  if (s == "max") return Objective::max;
  throw std::invalid_argument("unknown objective: " + s);
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("run_trials: n must be at least 2");
  if (cfg.orientation == Orientation::undirected && cfg.n < 3)
    throw std::invalid_argument("run_trials: undirected instances need n >= 3");
  if (cfg.trials < 1) throw std::invalid_argument("run_trials: trials must be positive");
  if (!std::is_sorted(cfg.c_grid.begin(), cfg.c_grid.end()))
    throw std::invalid_argument("run_trials: c_grid must be ascending");
  std::vector<TrialRecord> records(cfg.trials);
  parallel_for(cfg.trials, cfg.workers, [&](long long t) {
    const auto start = std::chrono::steady_clock::now();
    const GraphInstance g =
        sample_complete(cfg.n, cfg.orientation, derive_seed(cfg.base_seed, static_cast<std::uint64_t>(t)));
    const SolveResult r = cfg.objective == Objective::mean ? pruned_solve(g) : min_max_cycle(g);
    TrialRecord& rec = records[t];
    rec.trial_index = t;
    rec.scaled_weight = static_cast<double>(cfg.n) * r.min_mean;
    rec.length = r.witness.length();
    rec.solver = r.solver;
    rec.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });
  return records;
}

ComparisonReport compare_to_limit(const std::vector<TrialRecord>& records,
                                  const ExperimentConfig& cfg, LimitVariant variant) {
  if (records.empty()) throw std::invalid_argument("compare_to_limit: no records");
  if (variant_orientation(variant) != cfg.orientation ||
      is_mean_variant(variant) != (cfg.objective == Objective::mean))
    throw std::invalid_argument("compare_to_limit: variant does not match the config's orientation/objective");

  ComparisonReport rep;
  rep.variant = variant;
  rep.n = cfg.n;
  rep.trials = static_cast<long long>(records.size());
  rep.base_seed = cfg.base_seed;
  const double tn = static_cast<double>(records.size());

  std::vector<double> scaled;
  scaled.reserve(records.size());
  int max_len = 0;
  for (const TrialRecord& rec : records) {
    scaled.push_back(rec.scaled_weight);
    max_len = std::max(max_len, rec.length);
  }
  std::sort(scaled.begin(), scaled.end());

  rep.cdf.reserve(cfg.c_grid.size());
  for (const double c : cfg.c_grid) {
    const auto cnt = std::upper_bound(scaled.begin(), scaled.end(), c) - scaled.begin();
    CdfPoint pt;
    pt.c = c;
    pt.empirical = static_cast<double>(cnt) / tn;
    pt.std_error = binomial_std_error(pt.empirical, tn);
    pt.analytic = limit_cdf(c, variant);
    rep.sup_gap = std::max(rep.sup_gap, std::abs(pt.empirical - pt.analytic));
    rep.cdf.push_back(pt);
  }

  const int kmin = k_min(variant);
  std::vector<long long> counts(static_cast<std::size_t>(max_len) + 1, 0);
  for (const TrialRecord& rec : records) ++counts[rec.length];

  rep.pmf.reserve(std::max(0, max_len - kmin + 1));
  for (int k = kmin; k <= max_len; ++k) {
    PmfPoint pt;
    pt.k = k;
    pt.empirical = static_cast<double>(counts[k]) / tn;
    pt.std_error = binomial_std_error(pt.empirical, tn);
    pt.analytic = length_pmf(k, variant);
    rep.pmf.push_back(pt);
  }

  // chi-square: individual bins while the limit law expects >= 5 counts,
  // everything beyond (including the supercritical mass) in one tail bin
  double chi = 0.0;
  double pmf_retained = 0.0;
  long long obs_retained = 0;
  int bins = 0;
  for (int k = kmin;; ++k) {
    const double pk = length_pmf(k, variant);
    const double expected = tn * pk;
    if (expected < 5.0) break;
    const double observed = k <= max_len ? static_cast<double>(counts[k]) : 0.0;
    chi += (observed - expected) * (observed - expected) / expected;
    pmf_retained += pk;
    if (k <= max_len) obs_retained += counts[k];
    ++bins;
  }
  const double tail_expected = tn * (1.0 - pmf_retained);
  const double tail_observed = tn - static_cast<double>(obs_retained);
  if (tail_expected > 0.0) {
    chi += (tail_observed - tail_expected) * (tail_observed - tail_expected) / tail_expected;
    ++bins;
  }
  rep.chi_square = chi;
  rep.chi_square_bins = bins;
  return rep;
}

PoissonReport poisson_check(int n, double c0, int k_max, long long trials,
                            std::uint64_t base_seed, Orientation orientation, int workers) {
  const int kmin = orientation == Orientation::directed ? 2 : 3;
  if (n < kmin) throw std::invalid_argument("poisson_check: n too small for a cycle");
  if (k_max < kmin) throw std::invalid_argument("poisson_check: k_max below the shortest cycle length");
  if (c0 < 0.0) throw std::invalid_argument("poisson_check: negative c0");
  if (trials < 1) throw std::invalid_argument("poisson_check: trials must be positive");

  const int kspan = k_max - kmin + 1;
  std::vector<long long> totals(trials, 0);
  std::vector<long long> perk(static_cast<std::size_t>(trials) * kspan, 0);
  parallel_for(trials, workers, [&](long long t) {
    const LightCycleCensus census =
        count_light_cycles_sampled(n, orientation, derive_seed(base_seed, static_cast<std::uint64_t>(t)), c0, k_max);
    long long total = 0;
    for (const auto& [k, cnt] : census.counts) {
      total += cnt;
      perk[static_cast<std::size_t>(t) * kspan + (k - kmin)] = cnt;
    }
    totals[t] = total;
  });

  PoissonReport rep;
  rep.n = n;
  rep.c0 = c0;
  rep.k_max = k_max;
  rep.trials = trials;
  rep.base_seed = base_seed;
  rep.orientation = orientation;

  const double tn = static_cast<double>(trials);
  long long max_total = 0;
  double total_sum = 0.0;
  for (const long long v : totals) {
    max_total = std::max(max_total, v);
    total_sum += static_cast<double>(v);
  }
  rep.empirical_mean = total_sum / tn;
  std::vector<long long> hist(static_cast<std::size_t>(max_total) + 1, 0);
  for (const long long v : totals) ++hist[v];
  rep.count_probs.resize(hist.size());
  for (std::size_t i = 0; i < hist.size(); ++i)
    rep.count_probs[i] = static_cast<double>(hist[i]) / tn;

  double lambda = 0.0;
  for (int k = kmin; k <= k_max; ++k) lambda += expected_light_count_exact(n, k, c0, orientation);
  rep.analytic_mean = lambda;

  // extend the reference law until its tail mass is negligible, then the
  // leftover tail joins the total-variation sum wholesale
  double term = std::exp(-lambda);
  double cumulative = 0.0;
  std::size_t j = 0;
  for (;; ++j) {
    rep.poisson_probs.push_back(term);
    cumulative += term;
    if (j >= static_cast<std::size_t>(max_total) && 1.0 - cumulative < 1e-12) break;
    if (j > static_cast<std::size_t>(max_total) + 4096) break;
    term *= lambda / static_cast<double>(j + 1);
  }
  double tv = std::max(0.0, 1.0 - cumulative);
  for (std::size_t i = 0; i < rep.poisson_probs.size(); ++i) {
    const double emp = i < rep.count_probs.size() ? rep.count_probs[i] : 0.0;
    tv += std::abs(emp - rep.poisson_probs[i]);
  }
  rep.tv_distance = 0.5 * tv;

  rep.per_length.reserve(kspan);
  for (int k = kmin; k <= k_max; ++k) {
    double sum = 0.0;
    for (long long t = 0; t < trials; ++t) sum += static_cast<double>(perk[static_cast<std::size_t>(t) * kspan + (k - kmin)]);
    const double mean = sum / tn;
    double ss = 0.0;
    for (long long t = 0; t < trials; ++t) {
      const double d = static_cast<double>(perk[static_cast<std::size_t>(t) * kspan + (k - kmin)]) - mean;
      ss += d * d;
    }
    PerLengthMean row;
    row.k = k;
    row.mean = mean;
    row.std_error = trials > 1 ? std::sqrt(ss / (tn - 1.0) / tn) : 0.0;
    row.analytic = expected_light_count_exact(n, k, c0, orientation);
    rep.per_length.push_back(row);
  }
  return rep;
}

WalkBandReport walk_band_experiment(long long L, double A, long long trials,
                                    std::uint64_t base_seed, int workers) {
  if (L < 2) throw std::invalid_argument("walk_band_experiment: L must be at least 2");
  if (!(A > 0.0)) throw std::invalid_argument("walk_band_experiment: A must be positive");
  if (trials < 1) throw std::invalid_argument("walk_band_experiment: trials must be positive");

  std::vector<char> inside(trials, 0);
  parallel_for(trials, workers, [&](long long t) {
    const std::uint64_t s = derive_seed(base_seed, static_cast<std::uint64_t>(t));
    std::vector<double> w(static_cast<std::size_t>(L));
    double total = 0.0;
    for (long long i = 0; i < L; ++i) {
      w[i] = exp1_from_hash(hash_pair(s, static_cast<std::uint64_t>(i), 0));
      total += w[i];
    }
    inside[t] = uniformly_light_weights(w, A, total / static_cast<double>(L)) ? 1 : 0;
  });

  WalkBandReport rep;
  rep.L = L;
  rep.A = A;
  rep.trials = trials;
  rep.base_seed = base_seed;
  long long hits = 0;
  for (const char c : inside) hits += c;
  rep.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  rep.std_error = binomial_std_error(rep.p_hat, static_cast<double>(trials));
  rep.exp_estimate = uniform_light_probability_estimate(L, A);
  rep.brownian = brownian_band_probability(static_cast<double>(L), A / 2.0, 200);
  return rep;
}

BandWalkReport brownian_band_walk(double T, double a, long long steps, long long trials,
                                  std::uint64_t base_seed, int workers) {
  if (!(T > 0.0) || !(a > 0.0)) throw std::invalid_argument("brownian_band_walk: T, a must be positive");
  if (steps < 1) throw std::invalid_argument("brownian_band_walk: steps must be positive");
  if (trials < 1) throw std::invalid_argument("brownian_band_walk: trials must be positive");

  const double dt = T / static_cast<double>(steps);
  const double sd = std::sqrt(dt);
  std::vector<char> inside(trials, 0);
  parallel_for(trials, workers, [&](long long t) {
    const std::uint64_t s = derive_seed(base_seed, static_cast<std::uint64_t>(t));
    double x = 0.0;
    bool alive = true;
    for (long long p = 0; alive && 2 * p < steps; ++p) {
      const double u1 = to_unit(hash_pair(s, static_cast<std::uint64_t>(p), 0));
      const double u2 = to_unit(hash_pair(s, static_cast<std::uint64_t>(p), 1));
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      const double z[2] = {r * std::cos(angle), r * std::sin(angle)};
      for (int h = 0; h < 2; ++h) {
        const long long j = 2 * p + h;
        if (j >= steps) break;
        const double x1 = x + sd * z[h];
        if (!(std::abs(x1) < a)) {
          alive = false;
          break;
        }
        // the bridge between grid points crosses a barrier at distance
        // d0, d1 from the endpoints with probability exp(-2 d0 d1 / dt)
        const double q_up = 2.0 * (a - x) * (a - x1) / dt;
        if (q_up < 40.0 && to_unit(hash_pair(s, static_cast<std::uint64_t>(j), 2)) < std::exp(-q_up)) {
          alive = false;
          break;
        }
        const double q_dn = 2.0 * (a + x) * (a + x1) / dt;
        if (q_dn < 40.0 && to_unit(hash_pair(s, static_cast<std::uint64_t>(j), 3)) < std::exp(-q_dn)) {
          alive = false;
          break;
        }
        x = x1;
      }
    }
    inside[t] = alive ? 1 : 0;
  });

  BandWalkReport rep;
  rep.T = T;
  rep.a = a;
  rep.steps = steps;
  rep.trials = trials;
  rep.base_seed = base_seed;
  long long hits = 0;
  for (const char c : inside) hits += c;
  rep.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  rep.std_error = binomial_std_error(rep.p_hat, static_cast<double>(trials));
  rep.brownian = brownian_band_probability(T, a, 200);
  return rep;
}

SupercriticalReport supercritical_length_experiment(const std::vector<int>& n_list,
                                                    long long trials, std::uint64_t base_seed,
                                                    Orientation orientation, int workers) {
  if (n_list.empty()) throw std::invalid_argument("supercritical_length_experiment: empty n list");
  if (trials < 1) throw std::invalid_argument("supercritical_length_experiment: trials must be positive");
  const LimitVariant variant =
      orientation == Orientation::directed ? LimitVariant::directed_mean : LimitVariant::undirected_mean;
  const double threshold = std::exp(-1.0);

  SupercriticalReport rep;
  rep.orientation = orientation;
  rep.trials = trials;
  rep.base_seed = base_seed;
  rep.rows.reserve(n_list.size());
  for (const int n : n_list) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.trials = trials;
    cfg.base_seed = derive_seed(base_seed, static_cast<std::uint64_t>(n));
    cfg.orientation = orientation;
    cfg.objective = Objective::mean;
    cfg.workers = workers;
    const std::vector<TrialRecord> records = run_trials(cfg);

    SupercriticalRow row;
    row.n = n;
    row.trials = trials;
    const SupercriticalBounds bounds = supercritical_bounds(n);
    row.length_lower = bounds.length_lower;
    row.weight_upper = static_cast<double>(n) * bounds.weight_upper;
    row.analytic_jump = 1.0 - pmf_sum(variant);
    row.scaled_weights.reserve(records.size());
    for (const TrialRecord& rec : records) {
      row.scaled_weights.push_back(rec.scaled_weight);
      if (rec.scaled_weight > threshold) row.conditional_lengths.push_back(rec.length);
    }
    std::sort(row.scaled_weights.begin(), row.scaled_weights.end());
    std::sort(row.conditional_lengths.begin(), row.conditional_lengths.end());
    row.conditional_trials = static_cast<long long>(row.conditional_lengths.size());
    row.jump_fraction = static_cast<double>(row.conditional_trials) / static_cast<double>(trials);
    if (row.conditional_trials > 0) {
      const auto& lens = row.conditional_lengths;
      const std::size_t m = lens.size();
      row.median_length = m % 2 == 1 ? lens[m / 2]
                                     : 0.5 * (lens[m / 2 - 1] + lens[m / 2]);
      long long ge = 0;
      for (const int len : lens)
        if (static_cast<double>(len) >= row.length_lower) ++ge;
      row.frac_len_ge_lower = static_cast<double>(ge) / static_cast<double>(m);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---- emission ----

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("emit: cannot open " + path);
  return f;
}

void close_out(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw std::runtime_error("emit: write failed for " + path);
}

std::string sibling_pmf_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + "_pmf";
  return path.substr(0, dot) + "_pmf" + path.substr(dot);
}

nlohmann::json meta_json(long long n, long long trials, std::uint64_t base_seed) {
  return nlohmann::json{{"n", n}, {"trials", trials}, {"base_seed", base_seed}, {"version", artifact_version()}};
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream f = open_out(path);
  f << j.dump(2) << '\n';
  close_out(f, path);
}

void write_cdf_rows(std::ofstream& f, const ComparisonReport& rep) {
  f << "variant,c,empirical,stderr,analytic\n";
  for (const CdfPoint& p : rep.cdf)
    f << to_string(rep.variant) << ',' << num(p.c) << ',' << num(p.empirical) << ','
      << num(p.std_error) << ',' << num(p.analytic) << '\n';
}

void write_pmf_rows(std::ofstream& f, const ComparisonReport& rep) {
  f << "variant,k,empirical,stderr,analytic\n";
  for (const PmfPoint& p : rep.pmf)
    f << to_string(rep.variant) << ',' << p.k << ',' << num(p.empirical) << ','
      << num(p.std_error) << ',' << num(p.analytic) << '\n';
}

// polyline over finite points; coordinates land in a fixed chart box
std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     double xmin, double xmax, double ymax, const char* style) {
  std::ostringstream out;
  out << "<polyline fill='none' " << style << " points='";
  bool first = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    const double px = 70.0 + (xs[i] - xmin) / (xmax - xmin) * 620.0;
    const double py = 420.0 - ys[i] / ymax * 390.0;
    if (!first) out << ' ';
    first = false;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", px, py);
    out << buf;
  }
  out << "'/>\n";
  return out.str();
}

void write_svg(const ComparisonReport& rep, const std::string& path) {
  const bool use_cdf = !rep.cdf.empty();
  std::vector<double> xs, emp, ana;
  if (use_cdf) {
    for (const CdfPoint& p : rep.cdf) {
      xs.push_back(p.c);
      emp.push_back(p.empirical);
      ana.push_back(p.analytic);
    }
  } else {
    for (const PmfPoint& p : rep.pmf) {
      xs.push_back(p.k);
      emp.push_back(p.empirical);
      ana.push_back(p.analytic);
    }
  }
  if (xs.empty()) throw std::invalid_argument("emit: comparison report has no rows to draw");
  const double xmin = xs.front();
  const double xmax = xs.back() > xmin ? xs.back() : xmin + 1.0;
  double ymax = 1e-12;
  for (const double y : emp)
    if (std::isfinite(y)) ymax = std::max(ymax, y);
  for (const double y : ana)
    if (std::isfinite(y)) ymax = std::max(ymax, y);

  std::ofstream f = open_out(path);
  f << "<svg xmlns='http://www.w3.org/2000/svg' width='720' height='480' viewBox='0 0 720 480'>\n"
    << "<rect width='720' height='480' fill='white'/>\n"
    << "<line x1='70' y1='420' x2='690' y2='420' stroke='black'/>\n"
    << "<line x1='70' y1='420' x2='70' y2='30' stroke='black'/>\n";
  f << polyline(xs, ana, xmin, xmax, ymax, "stroke='black' stroke-dasharray='6 3'");
  f << polyline(xs, emp, xmin, xmax, ymax, "stroke='#1f77b4' stroke-width='1.5'");
  char label[128];
  std::snprintf(label, sizeof label, "%.4g", ymax);
  f << "<text x='64' y='34' text-anchor='end' font-size='12'>" << label << "</text>\n"
    << "<text x='64' y='424' text-anchor='end' font-size='12'>0</text>\n";
  std::snprintf(label, sizeof label, "%.4g", xmin);
  f << "<text x='70' y='438' text-anchor='middle' font-size='12'>" << label << "</text>\n";
  std::snprintf(label, sizeof label, "%.4g", xmax);
  f << "<text x='690' y='438' text-anchor='middle' font-size='12'>" << label << "</text>\n"
    << "<text x='380' y='460' text-anchor='middle' font-size='13'>" << (use_cdf ? "c" : "k") << "</text>\n"
    << "<text x='380' y='20' text-anchor='middle' font-size='13'>" << to_string(rep.variant)
    << (use_cdf ? " cdf" : " length pmf") << "</text>\n"
    << "<line x1='560' y1='50' x2='600' y2='50' stroke='#1f77b4' stroke-width='1.5'/>\n"
    << "<text x='606' y='54' font-size='12'>empirical</text>\n"
    << "<line x1='560' y1='70' x2='600' y2='70' stroke='black' stroke-dasharray='6 3'/>\n"
    << "<text x='606' y='74' font-size='12'>limit</text>\n"
    << "</svg>\n";
  close_out(f, path);
}

}  // namespace

EmitFormat emit_format_from_string(const std::string& s) {
  if (s == "csv") return EmitFormat::csv;
  if (s == "json") return EmitFormat::json;
  if (s == "svg") return EmitFormat::svg;
  throw std::invalid_argument("unknown format: " + s);
}

std::string artifact_version() { return "v0.1.0"; }

void emit(const std::vector<TrialRecord>& records, const ExperimentConfig& cfg,
          const std::string& path, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::ofstream f = open_out(path);
    f << "trial,scaled_weight,length,solver,elapsed\n";
    for (const TrialRecord& r : records)
      f << r.trial_index << ',' << num(r.scaled_weight) << ',' << r.length << ','
        << to_string(r.solver) << ',' << num(r.elapsed) << '\n';
    close_out(f, path);
    return;
  }
  if (format == EmitFormat::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TrialRecord& r : records)
      rows.push_back({{"trial", r.trial_index},
                      {"scaled_weight", r.scaled_weight},
                      {"length", r.length},
                      {"solver", to_string(r.solver)},
                      {"elapsed", r.elapsed}});
    write_json({{"meta", meta_json(cfg.n, cfg.trials, cfg.base_seed)}, {"rows", std::move(rows)}}, path);
    return;
  }
  throw std::invalid_argument("emit: svg emission is only available for comparison reports");
}

void emit(const ComparisonReport& report, const std::string& path, EmitFormat format) {
  if (format == EmitFormat::csv) {
    if (!report.cdf.empty()) {
      std::ofstream f = open_out(path);
      write_cdf_rows(f, report);
      close_out(f, path);
      std::ofstream g = open_out(sibling_pmf_path(path));
      write_pmf_rows(g, report);
      close_out(g, sibling_pmf_path(path));
    } else {
      std::ofstream f = open_out(path);
      write_pmf_rows(f, report);
      close_out(f, path);
    }
    return;
  }
  if (format == EmitFormat::json) {
    nlohmann::json cdf = nlohmann::json::array();
    for (const CdfPoint& p : report.cdf)
      cdf.push_back({{"c", p.c}, {"empirical", p.empirical}, {"stderr", p.std_error}, {"analytic", p.analytic}});
    nlohmann::json pmf = nlohmann::json::array();
    for (const PmfPoint& p : report.pmf)
      pmf.push_back({{"k", p.k}, {"empirical", p.empirical}, {"stderr", p.std_error}, {"analytic", p.analytic}});
    write_json({{"meta", meta_json(report.n, report.trials, report.base_seed)},
                {"variant", to_string(report.variant)},
                {"cdf", std::move(cdf)},
                {"pmf", std::move(pmf)},
                {"sup_gap", report.sup_gap},
                {"chi_square", report.chi_square},
                {"chi_square_bins", report.chi_square_bins}},
               path);
    return;
  }
  write_svg(report, path);
}

void emit(const PoissonReport& report, const std::string& path, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::ofstream f = open_out(path);
    f << "count,empirical_prob,poisson_prob\n";
    const std::size_t rows = std::max(report.count_probs.size(), report.poisson_probs.size());
    for (std::size_t j = 0; j < rows; ++j) {
      const double emp = j < report.count_probs.size() ? report.count_probs[j] : 0.0;
      const double poi = j < report.poisson_probs.size() ? report.poisson_probs[j] : 0.0;
      f << j << ',' << num(emp) << ',' << num(poi) << '\n';
    }
    close_out(f, path);
    return;
  }
  if (format == EmitFormat::json) {
    nlohmann::json rows = nlohmann::json::array();
    const std::size_t count = std::max(report.count_probs.size(), report.poisson_probs.size());
    for (std::size_t j = 0; j < count; ++j)
      rows.push_back({{"count", j},
                      {"empirical_prob", j < report.count_probs.size() ? report.count_probs[j] : 0.0},
                      {"poisson_prob", j < report.poisson_probs.size() ? report.poisson_probs[j] : 0.0}});
    nlohmann::json per_length = nlohmann::json::array();
    for (const PerLengthMean& row : report.per_length)
      per_length.push_back(
          {{"k", row.k}, {"mean", row.mean}, {"stderr", row.std_error}, {"analytic", row.analytic}});
    write_json({{"meta", meta_json(report.n, report.trials, report.base_seed)},
                {"orientation", report.orientation == Orientation::directed ? "directed" : "undirected"},
                {"c0", report.c0},
                {"k_max", report.k_max},
                {"rows", std::move(rows)},
                {"empirical_mean", report.empirical_mean},
                {"analytic_mean", report.analytic_mean},
                {"tv_distance", report.tv_distance},
                {"per_length", std::move(per_length)}},
               path);
    return;
  }
  throw std::invalid_argument("emit: svg emission is only available for comparison reports");
}

void emit(const WalkBandReport& report, const std::string& path, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::ofstream f = open_out(path);
    f << "L,A,p_hat,stderr,exp_estimate,brownian\n";
    f << report.L << ',' << num(report.A) << ',' << num(report.p_hat) << ',' << num(report.std_error)
      << ',' << num(report.exp_estimate) << ',' << num(report.brownian) << '\n';
    close_out(f, path);
    return;
  }
  if (format == EmitFormat::json) {
    write_json({{"meta", meta_json(0, report.trials, report.base_seed)},
                {"rows",
                 nlohmann::json::array({{{"L", report.L},
                                         {"A", report.A},
                                         {"p_hat", report.p_hat},
                                         {"stderr", report.std_error},
                                         {"exp_estimate", report.exp_estimate},
                                         {"brownian", report.brownian}}})}},
               path);
    return;
  }
  throw std::invalid_argument("emit: svg emission is only available for comparison reports");
}

void emit(const BandWalkReport& report, const std::string& path, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::ofstream f = open_out(path);
    f << "T,a,steps,p_hat,stderr,brownian\n";
    f << num(report.T) << ',' << num(report.a) << ',' << report.steps << ',' << num(report.p_hat)
      << ',' << num(report.std_error) << ',' << num(report.brownian) << '\n';
    close_out(f, path);
    return;
  }
  if (format == EmitFormat::json) {
    write_json({{"meta", meta_json(0, report.trials, report.base_seed)},
                {"rows",
                 nlohmann::json::array({{{"T", report.T},
                                         {"a", report.a},
                                         {"steps", report.steps},
                                         {"p_hat", report.p_hat},
                                         {"stderr", report.std_error},
                                         {"brownian", report.brownian}}})}},
               path);
    return;
  }
  throw std::invalid_argument("emit: svg emission is only available for comparison reports");
}

void emit(const SupercriticalReport& report, const std::string& path, EmitFormat format) {
  if (format == EmitFormat::csv) {
    std::ofstream f = open_out(path);
    f << "n,trials,jump_fraction,analytic_jump,conditional_trials,median_length,"
         "frac_len_ge_lower,length_lower,weight_upper\n";
    for (const SupercriticalRow& r : report.rows)
      f << r.n << ',' << r.trials << ',' << num(r.jump_fraction) << ',' << num(r.analytic_jump)
        << ',' << r.conditional_trials << ',' << num(r.median_length) << ','
        << num(r.frac_len_ge_lower) << ',' << num(r.length_lower) << ',' << num(r.weight_upper)
        << '\n';
    close_out(f, path);
    return;
  }
  if (format == EmitFormat::json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SupercriticalRow& r : report.rows) {
      nlohmann::json hist = nlohmann::json::array();
      for (std::size_t i = 0; i < r.conditional_lengths.size();) {
        std::size_t j = i;
        while (j < r.conditional_lengths.size() && r.conditional_lengths[j] == r.conditional_lengths[i]) ++j;
        hist.push_back({r.conditional_lengths[i], j - i});
        i = j;
      }
      rows.push_back({{"n", r.n},
                      {"trials", r.trials},
                      {"jump_fraction", r.jump_fraction},
                      {"analytic_jump", r.analytic_jump},
                      {"conditional_trials", r.conditional_trials},
                      {"median_length", r.median_length},
                      {"frac_len_ge_lower", r.frac_len_ge_lower},
                      {"length_lower", r.length_lower},
                      {"weight_upper", r.weight_upper},
                      {"length_histogram", std::move(hist)}});
    }
    write_json({{"meta", meta_json(0, report.trials, report.base_seed)},
                {"orientation", report.orientation == Orientation::directed ? "directed" : "undirected"},
                {"rows", std::move(rows)}},
               path);
    return;
  }
  throw std::invalid_argument("emit: svg emission is only available for comparison reports");
}

}  // namespace meancycle
