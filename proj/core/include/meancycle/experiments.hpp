#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "meancycle/analytic.hpp"
#include "meancycle/graph.hpp"
#include "meancycle/solver.hpp"

namespace meancycle {

enum class Objective { mean, max };

std::string to_string(Objective o);
Objective objective_from_string(const std::string& s);

struct ExperimentConfig {
  int n = 0;
  long long trials = 1;
  std::uint64_t base_seed = 0;
  Orientation orientation = Orientation::directed;
  Objective objective = Objective::mean;
  std::vector<double> c_grid;  // ascending
  int k_max = 0;
  int workers = 1;
};

struct TrialRecord {
  long long trial_index = 0;
  double scaled_weight = 0.0;  // n times the optimal objective value
  int length = 0;              // witness cycle length
  SolverKind solver = SolverKind::karp;
  double elapsed = 0.0;        // seconds; wall-clock noise, not part of the
                               // deterministic payload
};

// One solve per trial: pruned_solve for the mean objective, min_max_cycle
// for max. Trial t draws its instance from derive_seed(base_seed, t), so
// everything but the elapsed timings is a pure function of cfg and the
// record list is identical for any worker count.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg);

struct CdfPoint {
  double c = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double analytic = 0.0;
};

struct PmfPoint {
  int k = 0;
  double empirical = 0.0;
  double std_error = 0.0;
  double analytic = 0.0;
};

struct ComparisonReport {
  LimitVariant variant = LimitVariant::directed_mean;
  int n = 0;
  long long trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<CdfPoint> cdf;  // one row per grid point
  std::vector<PmfPoint> pmf;  // dense over observed witness lengths
  double sup_gap = 0.0;       // max |empirical - analytic| over the grid
  double chi_square = 0.0;    // length bins vs the limit pmf, expected
  int chi_square_bins = 0;    // counts below 5 pooled into one tail bin
};

// Empirical CDF of the scaled weight on cfg.c_grid and the empirical
// length pmf, against the limit laws of `variant`. The variant must match
// the config's orientation and objective.
ComparisonReport compare_to_limit(const std::vector<TrialRecord>& records,
                                  const ExperimentConfig& cfg, LimitVariant variant);

struct PerLengthMean {
  int k = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double analytic = 0.0;  // exact finite-n expectation
};

struct PoissonReport {
  int n = 0;
  double c0 = 0.0;
  int k_max = 0;
  long long trials = 0;
  std::uint64_t base_seed = 0;
  Orientation orientation = Orientation::directed;
  std::vector<double> count_probs;    // index = total light-cycle count
  std::vector<double> poisson_probs;  // Poisson law at the exact mean
  double empirical_mean = 0.0;
  double analytic_mean = 0.0;  // sum over lengths of the exact expectation
  double tv_distance = 0.0;
  std::vector<PerLengthMean> per_length;
};

// Distribution of the number of c0-light cycles of length <= k_max over
// sampled instances, compared to the Poisson law whose mean is the exact
// finite-n expected count (not the limit), so the shape claim is isolated
// from first-moment convergence.
PoissonReport poisson_check(int n, double c0, int k_max, long long trials,
                            std::uint64_t base_seed,
                            Orientation orientation = Orientation::directed,
                            int workers = 1);

struct WalkBandReport {
  long long L = 0;
  double A = 0.0;
  long long trials = 0;
  std::uint64_t base_seed = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double exp_estimate = 0.0;  // exp(-(pi^2/2) L/A^2)
  double brownian = 0.0;      // series value for the width-A band, time L
};

// Probability that a length-L cycle of i.i.d. Exp(1) weights is A-uniformly
// light at its own mean (the event is scale invariant, so the lightness
// level is free). Uniform lightness of the cycle is exactly "the centered
// prefix walk has range at most A times the mean weight", whose Brownian
// analogue is confinement to a band of total width A; the report quotes
// the band series at T = L, half-width A/2 alongside the cruder
// exp(-(pi^2/2) L/A^2) leading-order estimate.
WalkBandReport walk_band_experiment(long long L, double A, long long trials,
                                    std::uint64_t base_seed, int workers = 1);

struct BandWalkReport {
  double T = 0.0;
  double a = 0.0;
  long long steps = 0;
  long long trials = 0;
  std::uint64_t base_seed = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  double brownian = 0.0;  // the series this walk estimates
};

// Monte Carlo oracle for the band-probability series itself: Gaussian
// walks of `steps` increments over [0, T], staying strictly inside
// (-a, a). Checking only at grid points biases the estimate high by
// O(sqrt(T/steps)), so between consecutive points each barrier is crossed
// with the Brownian-bridge probability exp(-2 d0 d1 / dt) and the walk is
// killed on those draws too; the surviving bias is far below Monte Carlo
// noise at the scales used here.
BandWalkReport brownian_band_walk(double T, double a, long long steps, long long trials,
                                  std::uint64_t base_seed, int workers = 1);

struct SupercriticalRow {
  int n = 0;
  long long trials = 0;
  double jump_fraction = 0.0;  // share of trials with scaled weight > 1/e
  double analytic_jump = 0.0;  // 1 - pmf_sum(variant)
  long long conditional_trials = 0;
  double median_length = 0.0;      // over the conditional trials
  double frac_len_ge_lower = 0.0;  // conditional share with length >= length_lower
  double length_lower = 0.0;
  double weight_upper = 0.0;  // scaled-weight bound (1 + (pi^2/2)/ln^2 n)/e
  std::vector<int> conditional_lengths;     // ascending
  std::vector<double> scaled_weights;       // all trials, ascending
};

struct SupercriticalReport {
  Orientation orientation = Orientation::directed;
  long long trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<SupercriticalRow> rows;
};

// Length statistics of the minimum mean-weight cycle conditional on the
// supercritical event (scaled weight strictly above 1/e; ties have
// probability zero), one row per n. Each n runs its own trial block seeded
// with derive_seed(base_seed, n) so rows are independent streams.
SupercriticalReport supercritical_length_experiment(const std::vector<int>& n_list,
                                                    long long trials,
                                                    std::uint64_t base_seed,
                                                    Orientation orientation = Orientation::directed,
                                                    int workers = 1);

enum class EmitFormat { csv, json, svg };

EmitFormat emit_format_from_string(const std::string& s);

std::string artifact_version();

// CSV columns (numbers in 17-significant-digit round-trip form):
//   trials list:  trial,scaled_weight,length,solver,elapsed
//   cdf:          variant,c,empirical,stderr,analytic
//   pmf:          variant,k,empirical,stderr,analytic
//   poisson:      count,empirical_prob,poisson_prob
//   walkband:     L,A,p_hat,stderr,exp_estimate,brownian
//   band walk:    T,a,steps,p_hat,stderr,brownian
//   supercritical: n,trials,jump_fraction,analytic_jump,conditional_trials,
//                  median_length,frac_len_ge_lower,length_lower,weight_upper
// JSON mirrors every table and adds a meta object (n, trials, base_seed,
// version). A comparison report holds two tables: CSV writes the cdf rows
// to `path` and the pmf rows to a sibling path with "_pmf" before the
// extension (pmf only goes to `path` itself when the grid is empty).
// SVG emission covers comparison reports only: empirical and analytic
// series as polylines.
void emit(const std::vector<TrialRecord>& records, const ExperimentConfig& cfg,
          const std::string& path, EmitFormat format);
void emit(const ComparisonReport& report, const std::string& path, EmitFormat format);
void emit(const PoissonReport& report, const std::string& path, EmitFormat format);
void emit(const WalkBandReport& report, const std::string& path, EmitFormat format);
void emit(const BandWalkReport& report, const std::string& path, EmitFormat format);
void emit(const SupercriticalReport& report, const std::string& path, EmitFormat format);

}  // namespace meancycle
