#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "meancycle/analytic.hpp"
#include "meancycle/experiments.hpp"
#include "meancycle/graph.hpp"
#include "meancycle/solver.hpp"

namespace {

using namespace meancycle;
using nlohmann::json;

// flag/value problems that deserve a usage message and exit code 2 rather
// than a runtime diagnostic
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// precedence: explicit flag > MEANCYCLE_SEED env > 0
std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t flag_value) {
  if (opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("MEANCYCLE_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "a:b:step" -> inclusive ascending grid
std::vector<double> parse_grid(const std::string& s) {
  double a = 0, b = 0, step = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail) != 3)
    throw usage_error("grid must be a:b:step, got '" + s + "'");
  if (!(step > 0) || b < a) throw usage_error("grid needs a <= b and step > 0, got '" + s + "'");
  std::vector<double> g;
  for (long long i = 0;; ++i) {
    const double c = a + static_cast<double>(i) * step;
    if (c > b + step * 1e-9) break;
    g.push_back(std::min(c, b));
  }
  return g;
}

// "2..10,100" -> sorted deduplicated list
std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw usage_error("empty item in list '" + s + "'");
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dots));
        const int hi = std::stoi(item.substr(dots + 2));
        if (hi < lo) throw usage_error("descending range '" + item + "'");
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::invalid_argument&) {
      throw usage_error("bad integer in list '" + s + "'");
    } catch (const std::out_of_range&) {
      throw usage_error("integer out of range in list '" + s + "'");
    }
  }
  if (out.empty()) throw usage_error("empty list '" + s + "'");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string grid_echo(const std::vector<double>& g) {
  if (g.empty()) return "[]";
  return "[" + num(g.front()) + ".." + num(g.back()) + ", " + std::to_string(g.size()) +
         " points]";
}

// run the body with --out (or stdout when empty) as the stream
template <class Fn>
void with_output(const std::string& path, Fn&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  body(f);
  if (!f) throw std::runtime_error("write failed for " + path);
}

std::string temp_artifact_path(const char* ext) {
  static std::atomic<unsigned> counter{0};
  static const unsigned long long tag = std::random_device{}();
  const auto name = "meancycle_" + std::to_string(tag) + "_" +
                    std::to_string(counter.fetch_add(1)) + ext;
  return (std::filesystem::temp_directory_path() / name).string();
}

void cat_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot reopen " + path);
  std::cout << f.rdbuf();
}

const char* format_ext(EmitFormat f) {
  switch (f) {
    case EmitFormat::csv: return ".csv";
    case EmitFormat::json: return ".json";
    default: return ".svg";
  }
}

// library emitters write to paths; stdout output goes through a scratch file
template <class Report>
void emit_report(const Report& r, const std::string& out, EmitFormat f) {
  if (!out.empty()) {
    emit(r, out, f);
    return;
  }
  const std::string tmp = temp_artifact_path(format_ext(f));
  emit(r, tmp, f);
  cat_file(tmp);
  std::filesystem::remove(tmp);
}

// comparison CSV spans two tables: cdf at the path, pmf at the sibling
void emit_report(const ComparisonReport& r, const std::string& out, EmitFormat f) {
  if (!out.empty()) {
    emit(r, out, f);
    return;
  }
  const std::string tmp = temp_artifact_path(format_ext(f));
  emit(r, tmp, f);
  cat_file(tmp);
  std::filesystem::remove(tmp);
  if (f == EmitFormat::csv && !r.cdf.empty()) {
    std::string sib = tmp;
    sib.insert(sib.size() - 4, "_pmf");
    if (std::filesystem::exists(sib)) {
      std::cout << "\n";
      cat_file(sib);
      std::filesystem::remove(sib);
    }
  }
}

json meta_json() {
  return json{{"n", 0}, {"trials", 0}, {"base_seed", 0}, {"version", artifact_version()}};
}

EmitFormat parse_format(const std::string& s) {
  try {
    return emit_format_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
}

struct CommonFlags {
  int n = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  bool directed = false;
  bool undirected = false;
  int workers = 1;
  std::string out;
  std::string format;

  Orientation orientation() const {
    if (directed && undirected) throw usage_error("--directed and --undirected conflict");
    return undirected ? Orientation::undirected : Orientation::directed;
  }
  std::uint64_t resolved_seed() const { return resolve_seed(seed_opt, seed); }
};

void add_orientation_flags(CLI::App* cmd, CommonFlags& c) {
  auto* d = cmd->add_flag("--directed", c.directed, "directed instance (default)");
  cmd->add_flag("--undirected", c.undirected, "undirected instance")->excludes(d);
}

void add_seed_flag(CLI::App* cmd, CommonFlags& c) {
  c.seed_opt = cmd->add_option("--seed", c.seed,
                               "base RNG seed (precedence: flag > MEANCYCLE_SEED env > 0)");
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  CommonFlags c;
  std::string objective = "mean";
  std::string solver = "pruned";
  CLI::Option* solver_opt = nullptr;
};

int run_solve(const SolveArgs& a) {
  const auto orientation = a.c.orientation();
  const auto objective = objective_from_string(a.objective);
  const std::uint64_t seed = a.c.resolved_seed();
  const EmitFormat format = parse_format(a.c.format);
  if (format == EmitFormat::svg) throw usage_error("solve emits csv or json only");

  std::vector<SolveResult> results;
  if (objective == Objective::max) {
    if (a.solver_opt->count() > 0)
      throw usage_error("--objective max uses the threshold solver; --solver does not apply");
  }
  std::cerr << "# config subcommand=solve n=" << a.c.n << " orientation="
            << to_string(orientation) << " objective=" << to_string(objective)
            << " seed=" << seed << " solver=" << (objective == Objective::max ? "threshold"
                                                                              : a.solver)
            << " format=" << a.c.format << "\n";

  const auto g = sample_complete(a.c.n, orientation, seed);
  if (objective == Objective::max) {
    results.push_back(min_max_cycle(g));
  } else if (a.solver == "karp") {
    results.push_back(karp_min_mean_cycle(g));
  } else if (a.solver == "howard") {
    results.push_back(howard_min_mean_cycle(g));
  } else if (a.solver == "brute") {
    results.push_back(brute_force_min_mean(g));
  } else if (a.solver == "pruned") {
    results.push_back(pruned_solve(g));
  } else if (a.solver == "all") {
    results.push_back(karp_min_mean_cycle(g));
    results.push_back(howard_min_mean_cycle(g));
    // brute force refuses n > 9; swap in the pruned solver beyond that
    results.push_back(a.c.n <= 9 ? brute_force_min_mean(g) : pruned_solve(g));
  } else {
    throw usage_error("unknown solver '" + a.solver + "' (karp|howard|brute|pruned|all)");
  }

  bool agree = true;
  for (const auto& r : results)
    agree = agree && std::abs(r.min_mean - results.front().min_mean) <=
                         1e-9 * std::max(1.0, std::abs(results.front().min_mean));

  with_output(a.c.out, [&](std::ostream& os) {
    if (format == EmitFormat::csv) {
      os << "solver,min_mean,scaled_weight,length,certified_exact,vertices\n";
      for (const auto& r : results) {
        os << to_string(r.solver) << "," << num(r.min_mean) << "," << num(a.c.n * r.min_mean)
           << "," << r.witness.length() << "," << (r.certified_exact ? 1 : 0) << ",";
        for (std::size_t i = 0; i < r.witness.vertices.size(); ++i)
          os << (i ? ";" : "") << r.witness.vertices[i];
        os << "\n";
      }
      return;
    }
    json j;
    j["config"] = {{"n", a.c.n},
                   {"orientation", to_string(orientation)},
                   {"objective", to_string(objective)},
                   {"seed", seed}};
    j["agree"] = agree;
    j["results"] = json::array();
    for (const auto& r : results) {
      j["results"].push_back({{"solver", to_string(r.solver)},
                              {"min_mean", r.min_mean},
                              {"scaled_weight", a.c.n * r.min_mean},
                              {"length", r.witness.length()},
                              {"vertices", r.witness.vertices},
                              {"certified_exact", r.certified_exact}});
    }
    os << j.dump(2) << "\n";
  });
  return 0;
}

// ---------------------------------------------------------------- sample

int run_sample(const CommonFlags& c) {
  const auto orientation = c.orientation();
  const std::uint64_t seed = c.resolved_seed();
  std::cerr << "# config subcommand=sample n=" << c.n << " orientation="
            << to_string(orientation) << " seed=" << seed << "\n";
  const auto g = sample_complete(c.n, orientation, seed);
  with_output(c.out, [&](std::ostream& os) { dump_csv(g, os); });
  return 0;
}

// ---------------------------------------------------------------- census

struct CensusArgs {
  CommonFlags c;
  double budget = 0.36;
  int k_max = 8;
};

int run_census(const CensusArgs& a) {
  const auto orientation = a.c.orientation();
  const std::uint64_t seed = a.c.resolved_seed();
  const EmitFormat format = parse_format(a.c.format);
  if (format == EmitFormat::svg) throw usage_error("census emits csv or json only");
  std::cerr << "# config subcommand=census n=" << a.c.n << " orientation="
            << to_string(orientation) << " seed=" << seed << " c=" << num(a.budget)
            << " kmax=" << a.k_max << " format=" << a.c.format << "\n";

  const auto census = count_light_cycles_sampled(a.c.n, orientation, seed, a.budget, a.k_max);
  long long total = 0;
  for (const auto& [k, cnt] : census.counts) total += cnt;

  with_output(a.c.out, [&](std::ostream& os) {
    if (format == EmitFormat::csv) {
      os << "k,count\n";
      for (const auto& [k, cnt] : census.counts) os << k << "," << cnt << "\n";
      return;
    }
    json j;
    j["meta"] = {{"n", a.c.n},
                 {"trials", 1},
                 {"base_seed", seed},
                 {"version", artifact_version()}};
    j["orientation"] = to_string(orientation);
    j["c"] = census.c;
    j["k_max"] = census.k_max;
    j["total"] = total;
    j["counts"] = json::array();
    for (const auto& [k, cnt] : census.counts) j["counts"].push_back({{"k", k}, {"count", cnt}});
    os << j.dump(2) << "\n";
  });
  return 0;
}

// ---------------------------------------------------------- analytic-table

struct TableArgs {
  CommonFlags c;
  std::string variant = "directed-mean";
  std::string k_list;
  double A = 0.0;
  double delta = -1.0;
  CLI::Option* delta_opt = nullptr;
  std::string L_range;
  double n_param = 0.0;
  CLI::Option* n_opt = nullptr;
};

int run_uniform_count(const TableArgs& a, EmitFormat format) {
  if (a.L_range.empty() || !(a.A > 0))
    throw usage_error("--delta mode needs --A > 0 and --L lo..hi");
  const auto window = parse_int_list(a.L_range);
  if (window.size() < 2) throw usage_error("--L must be a range lo..hi in --delta mode");
  SupercriticalParams p;
  p.A = a.A;
  p.delta = a.delta;
  p.L1 = window.front();
  p.L2 = window.back();
  p.L = p.L2;
  const auto orientation = a.c.orientation();
  std::cerr << "# config subcommand=analytic-table mode=uniform-count orientation="
            << to_string(orientation) << " A=" << num(p.A) << " delta=" << num(p.delta)
            << " L1=" << p.L1 << " L2=" << p.L2
            << " n=" << (a.n_opt->count() ? num(a.n_param) : "none") << " format=" << a.c.format
            << "\n";

  double count = 0.0;
  UniformCountReport rep;
  const bool with_variance = a.n_opt->count() > 0;
  if (with_variance) {
    rep = expected_uniform_light_count_report(p, orientation, a.n_param);
    count = rep.count;
  } else {
    count = expected_uniform_light_count(p, orientation);
  }

  with_output(a.c.out, [&](std::ostream& os) {
    if (format == EmitFormat::csv) {
      os << "A,delta,L1,L2,n,count,variance_ratio_bound,variance_precondition_ok\n";
      os << num(p.A) << "," << num(p.delta) << "," << p.L1 << "," << p.L2 << ","
         << (with_variance ? num(a.n_param) : "nan") << "," << num(count) << ","
         << (with_variance ? num(rep.variance_ratio_bound) : "nan") << ","
         << (with_variance ? std::string(rep.variance_precondition_ok ? "1" : "0") : "nan")
         << "\n";
      return;
    }
    json j;
    j["meta"] = meta_json();
    j["orientation"] = to_string(orientation);
    j["A"] = p.A;
    j["delta"] = p.delta;
    j["L1"] = p.L1;
    j["L2"] = p.L2;
    j["count"] = count;
    if (with_variance) {
      j["n"] = a.n_param;
      j["variance_ratio_bound"] = rep.variance_ratio_bound;
      j["variance_precondition_ok"] = rep.variance_precondition_ok;
    }
    os << j.dump(2) << "\n";
  });
  return 0;
}

int run_table(const TableArgs& a) {
  const EmitFormat format = parse_format(a.c.format);
  if (format == EmitFormat::svg) throw usage_error("analytic-table emits csv or json only");
  if (a.delta_opt->count() > 0) return run_uniform_count(a, format);

  const auto variant = variant_from_string(a.variant);
  std::vector<int> ks;
  if (a.k_list.empty()) {
    for (int k = k_min(variant); k <= 10; ++k) ks.push_back(k);
    ks.push_back(100);
  } else {
    ks = parse_int_list(a.k_list);
  }
  std::cerr << "# config subcommand=analytic-table variant=" << to_string(variant) << " k=[";
  for (std::size_t i = 0; i < ks.size(); ++i) std::cerr << (i ? "," : "") << ks[i];
  std::cerr << "] format=" << a.c.format << "\n";

  std::vector<double> pk(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) pk[i] = length_pmf(ks[i], variant);

  with_output(a.c.out, [&](std::ostream& os) {
    if (format == EmitFormat::csv) {
      os << "variant,k,empirical,stderr,analytic\n";
      for (std::size_t i = 0; i < ks.size(); ++i)
        os << to_string(variant) << "," << ks[i] << ",nan,nan," << num(pk[i]) << "\n";
      return;
    }
    json j;
    j["meta"] = meta_json();
    j["variant"] = to_string(variant);
    j["pmf"] = json::array();
    for (std::size_t i = 0; i < ks.size(); ++i)
      j["pmf"].push_back(
          {{"k", ks[i]}, {"empirical", nullptr}, {"stderr", nullptr}, {"analytic", pk[i]}});
    os << j.dump(2) << "\n";
  });
  return 0;
}

// ------------------------------------------------------------- cdf-curve

struct CurveArgs {
  CommonFlags c;
  std::string variant = "directed-mean";
  std::string grid;
};

std::vector<double> default_grid(LimitVariant v) {
  return parse_grid(is_mean_variant(v) ? "0:0.5:0.01" : "0:1.2:0.01");
}

int run_curve(const CurveArgs& a) {
  const EmitFormat format = parse_format(a.c.format);
  const auto variant = variant_from_string(a.variant);
  const auto grid = a.grid.empty() ? default_grid(variant) : parse_grid(a.grid);
  std::cerr << "# config subcommand=cdf-curve variant=" << to_string(variant)
            << " grid=" << grid_echo(grid) << " format=" << a.c.format << "\n";

  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = limit_cdf(grid[i], variant);

  if (format == EmitFormat::svg) {
    // reuse the comparison plot with the empirical series absent
    ComparisonReport rep;
    rep.variant = variant;
    const double nan = std::nan("");
    for (std::size_t i = 0; i < grid.size(); ++i)
      rep.cdf.push_back({grid[i], nan, nan, values[i]});
    emit_report(rep, a.c.out, format);
    return 0;
  }

  with_output(a.c.out, [&](std::ostream& os) {
    if (format == EmitFormat::csv) {
      os << "variant,c,empirical,stderr,analytic\n";
      for (std::size_t i = 0; i < grid.size(); ++i)
        os << to_string(variant) << "," << num(grid[i]) << ",nan,nan," << num(values[i]) << "\n";
      return;
    }
    json j;
    j["meta"] = meta_json();
    j["variant"] = to_string(variant);
    j["cdf"] = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
      j["cdf"].push_back(
          {{"c", grid[i]}, {"empirical", nullptr}, {"stderr", nullptr}, {"analytic", values[i]}});
    os << j.dump(2) << "\n";
  });
  return 0;
}

// ------------------------------------------------------------ experiment

struct ExperimentArgs {
  CommonFlags c;
  std::string objective = "mean";
  std::string grid;
};

int run_experiment(const ExperimentArgs& a) {
  const EmitFormat format = parse_format(a.c.format);
  ExperimentConfig cfg;
  cfg.n = a.c.n;
  cfg.trials = a.c.trials;
  cfg.base_seed = a.c.resolved_seed();
  cfg.orientation = a.c.orientation();
  cfg.objective = objective_from_string(a.objective);
  cfg.workers = a.c.workers;
  const bool mean = cfg.objective == Objective::mean;
  const bool undirected = cfg.orientation == Orientation::undirected;
  const auto variant = mean ? (undirected ? LimitVariant::undirected_mean
                                          : LimitVariant::directed_mean)
                            : (undirected ? LimitVariant::undirected_max
                                          : LimitVariant::directed_max);
  cfg.c_grid = a.grid.empty() ? default_grid(variant) : parse_grid(a.grid);

  std::cerr << "# config subcommand=experiment n=" << cfg.n << " trials=" << cfg.trials
            << " seed=" << cfg.base_seed << " trial_seeds=derive(seed,t)"
            << " orientation=" << to_string(cfg.orientation)
            << " objective=" << to_string(cfg.objective) << " grid=" << grid_echo(cfg.c_grid)
            << " workers=" << cfg.workers << " format=" << a.c.format << "\n";

  const auto records = run_trials(cfg);
  const auto report = compare_to_limit(records, cfg, variant);
  std::cerr << "# sup_gap=" << num(report.sup_gap) << " chi_square=" << num(report.chi_square)
            << " bins=" << report.chi_square_bins << "\n";
  emit_report(report, a.c.out, format);
  return 0;
}

// --------------------------------------------------------------- poisson

struct PoissonArgs {
  CommonFlags c;
  double budget = 0.36;
  int k_max = 8;
};

int run_poisson(const PoissonArgs& a) {
  const EmitFormat format = parse_format(a.c.format);
  if (format == EmitFormat::svg) throw usage_error("poisson emits csv or json only");
  const auto orientation = a.c.orientation();
  const std::uint64_t seed = a.c.resolved_seed();
  std::cerr << "# config subcommand=poisson n=" << a.c.n << " trials=" << a.c.trials
            << " seed=" << seed << " trial_seeds=derive(seed,t)"
            << " orientation=" << to_string(orientation) << " c=" << num(a.budget)
            << " kmax=" << a.k_max << " workers=" << a.c.workers << " format=" << a.c.format
            << "\n";
  const auto report =
      poisson_check(a.c.n, a.budget, a.k_max, a.c.trials, seed, orientation, a.c.workers);
  std::cerr << "# tv_distance=" << num(report.tv_distance)
            << " empirical_mean=" << num(report.empirical_mean)
            << " analytic_mean=" << num(report.analytic_mean) << "\n";
  emit_report(report, a.c.out, format);
  return 0;
}

// -------------------------------------------------------------- walkband

struct WalkbandArgs {
  CommonFlags c;
  long long L = 2000;
  double A = 0.0;
};

int run_walkband(const WalkbandArgs& a) {
  const EmitFormat format = parse_format(a.c.format);
  if (format == EmitFormat::svg) throw usage_error("walkband emits csv or json only");
  const std::uint64_t seed = a.c.resolved_seed();
  std::cerr << "# config subcommand=walkband L=" << a.L << " A=" << num(a.A)
            << " trials=" << a.c.trials << " seed=" << seed << " trial_seeds=derive(seed,t)"
            << " workers=" << a.c.workers << " format=" << a.c.format << "\n";
  const auto report = walk_band_experiment(a.L, a.A, a.c.trials, seed, a.c.workers);
  std::cerr << "# p_hat=" << num(report.p_hat) << " stderr=" << num(report.std_error)
            << " exp_estimate=" << num(report.exp_estimate) << " brownian="
            << num(report.brownian) << "\n";
  emit_report(report, a.c.out, format);
  return 0;
}

// --------------------------------------------------------- supercritical

struct SupercriticalArgs {
  CommonFlags c;
  std::string n_list = "1000";
};

int run_supercritical(const SupercriticalArgs& a) {
  const EmitFormat format = parse_format(a.c.format);
  if (format == EmitFormat::svg) throw usage_error("supercritical emits csv or json only");
  const auto orientation = a.c.orientation();
  const std::uint64_t seed = a.c.resolved_seed();
  const auto ns = parse_int_list(a.n_list);
  std::cerr << "# config subcommand=supercritical n=[";
  for (std::size_t i = 0; i < ns.size(); ++i) std::cerr << (i ? "," : "") << ns[i];
  std::cerr << "] trials=" << a.c.trials << " seed=" << seed
            << " row_seeds=derive(seed,n) trial_seeds=derive(row_seed,t)"
            << " orientation=" << to_string(orientation) << " workers=" << a.c.workers
            << " format=" << a.c.format << "\n";
  const auto report =
      supercritical_length_experiment(ns, a.c.trials, seed, orientation, a.c.workers);
  for (const auto& row : report.rows)
    std::cerr << "# n=" << row.n << " jump_fraction=" << num(row.jump_fraction)
              << " analytic_jump=" << num(row.analytic_jump)
              << " median_length=" << num(row.median_length) << "\n";
  emit_report(report, a.c.out, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "minimum mean-weight cycle laboratory.\n"
      "Weights are i.i.d. Exp(1); every c below is the scaled convention: a cycle is c-light\n"
      "when its mean weight is at most c/n, and reported weights are n times the optimum.\n"
      "Logs are natural throughout. Seeds resolve as flag > MEANCYCLE_SEED env > 0."};
  app.require_subcommand(1);
  app.set_version_flag("--version", meancycle::artifact_version());

  SolveArgs solve_args;
  {
    auto& a = solve_args;
    auto* cmd = app.add_subcommand("solve", "sample one instance and solve it exactly");
    cmd->add_option("--n", a.c.n, "vertex count")->default_val(8);
    add_seed_flag(cmd, a.c);
    add_orientation_flags(cmd, a.c);
    cmd->add_option("--objective", a.objective, "mean|max (max ignores --solver)")
        ->default_val("mean");
    a.solver_opt = cmd->add_option("--solver", a.solver,
                                   "karp|howard|brute|pruned|all (all = karp+howard+brute, "
                                   "pruned replacing brute for n > 9)");
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json")->default_val("json");
  }

  CommonFlags sample_args;
  {
    auto& c = sample_args;
    auto* cmd = app.add_subcommand("sample", "sample a complete instance and dump it as CSV");
    cmd->add_option("--n", c.n, "vertex count")->default_val(10);
    add_seed_flag(cmd, c);
    add_orientation_flags(cmd, c);
    cmd->add_option("--out", c.out, "output path (default stdout)");
  }

  CensusArgs census_args;
  {
    auto& a = census_args;
    auto* cmd = app.add_subcommand("census",
                                   "count c-light cycles of one sampled instance by length");
    cmd->add_option("--n", a.c.n, "vertex count")->default_val(100);
    add_seed_flag(cmd, a.c);
    add_orientation_flags(cmd, a.c);
    cmd->add_option("--c", a.budget, "scaled lightness level (mean weight at most c/n)")
        ->default_val(0.36);
    cmd->add_option("--kmax", a.k_max, "largest cycle length counted")->default_val(8);
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json")->default_val("csv");
  }

  TableArgs table_args;
  {
    auto& a = table_args;
    auto* cmd = app.add_subcommand(
        "analytic-table",
        "limit length-pmf table; with --delta, the expected uniformly-light cycle count");
    cmd->add_option("--variant", a.variant,
                    "undirected-max|directed-max|undirected-mean|directed-mean")
        ->default_val("directed-mean");
    cmd->add_option("--k", a.k_list, "length list, e.g. 2..10,100 (default k_min..10,100)");
    a.delta_opt = cmd->add_option(
        "--delta", a.delta, "uniform-count mode: relative excess of the lightness level over 1/e");
    cmd->add_option("--A", a.A, "uniform-count mode: uniformity slack (units of c/n)");
    cmd->add_option("--L", a.L_range, "uniform-count mode: length window lo..hi");
    a.n_opt = cmd->add_option("--n", a.n_param,
                              "uniform-count mode: include the variance ratio bound for this n");
    add_orientation_flags(cmd, a.c);
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json")->default_val("csv");
  }

  CurveArgs curve_args;
  {
    auto& a = curve_args;
    auto* cmd = app.add_subcommand("cdf-curve", "limit CDF of the scaled optimum on a c-grid");
    cmd->add_option("--variant", a.variant,
                    "undirected-max|directed-max|undirected-mean|directed-mean")
        ->default_val("directed-mean");
    cmd->add_option("--grid", a.grid,
                    "c grid a:b:step (default 0:0.5:0.01 mean, 0:1.2:0.01 max)");
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json|svg")->default_val("csv");
  }

  ExperimentArgs exp_args;
  {
    auto& a = exp_args;
    auto* cmd = app.add_subcommand(
        "experiment", "Monte Carlo trials of the optimum vs the limit cdf and length pmf");
    cmd->add_option("--n", a.c.n, "vertex count")->default_val(1000);
    cmd->add_option("--trials", a.c.trials, "number of sampled instances")->default_val(10000);
    add_seed_flag(cmd, a.c);
    add_orientation_flags(cmd, a.c);
    cmd->add_option("--objective", a.objective, "mean|max")->default_val("mean");
    cmd->add_option("--grid", a.grid,
                    "c grid a:b:step (default 0:0.5:0.01 mean, 0:1.2:0.01 max)");
    cmd->add_option("--workers", a.c.workers, "worker threads")->default_val(1);
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json|svg")->default_val("csv");
  }

  PoissonArgs poisson_args;
  {
    auto& a = poisson_args;
    auto* cmd = app.add_subcommand(
        "poisson", "light-cycle count distribution vs the exact-mean Poisson law");
    cmd->add_option("--n", a.c.n, "vertex count")->default_val(300);
    cmd->add_option("--trials", a.c.trials, "number of sampled instances")->default_val(5000);
    add_seed_flag(cmd, a.c);
    add_orientation_flags(cmd, a.c);
    cmd->add_option("--c", a.budget, "scaled lightness level")->default_val(0.36);
    cmd->add_option("--kmax", a.k_max, "largest cycle length counted")->default_val(8);
    cmd->add_option("--workers", a.c.workers, "worker threads")->default_val(1);
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json")->default_val("csv");
  }

  WalkbandArgs walkband_args;
  {
    auto& a = walkband_args;
    auto* cmd = app.add_subcommand(
        "walkband", "probability that an Exp(1) cycle is A-uniformly light at its own mean");
    cmd->add_option("--L", a.L, "cycle length")->default_val(2000);
    cmd->add_option("--A", a.A, "uniformity slack")->required();
    cmd->add_option("--trials", a.c.trials, "number of sampled cycles")->default_val(10000);
    add_seed_flag(cmd, a.c);
    cmd->add_option("--workers", a.c.workers, "worker threads")->default_val(1);
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json")->default_val("csv");
  }

  SupercriticalArgs super_args;
  {
    auto& a = super_args;
    auto* cmd = app.add_subcommand(
        "supercritical", "witness length statistics conditional on scaled weight above 1/e");
    cmd->add_option("--n", a.n_list, "vertex counts, e.g. 500,1000")->default_val("1000");
    cmd->add_option("--trials", a.c.trials, "trials per n")->default_val(3000);
    add_seed_flag(cmd, a.c);
    add_orientation_flags(cmd, a.c);
    cmd->add_option("--workers", a.c.workers, "worker threads")->default_val(1);
    cmd->add_option("--out", a.c.out, "output path (default stdout)");
    cmd->add_option("--format", a.c.format, "csv|json")->default_val("csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand("solve")) return run_solve(solve_args);
    if (app.got_subcommand("sample")) return run_sample(sample_args);
    if (app.got_subcommand("census")) return run_census(census_args);
    if (app.got_subcommand("analytic-table")) return run_table(table_args);
    if (app.got_subcommand("cdf-curve")) return run_curve(curve_args);
    if (app.got_subcommand("experiment")) return run_experiment(exp_args);
    if (app.got_subcommand("poisson")) return run_poisson(poisson_args);
    if (app.got_subcommand("walkband")) return run_walkband(walkband_args);
    if (app.got_subcommand("supercritical")) return run_supercritical(super_args);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
