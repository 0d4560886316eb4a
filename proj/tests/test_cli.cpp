#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "meancycle/analytic.hpp"
#include "meancycle/experiments.hpp"
#include "meancycle/graph.hpp"
#include "meancycle/solver.hpp"

using namespace meancycle;
using nlohmann::json;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// drive the installed binary the way a shell script would
RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out_path = tmp_path("cli_stdout.txt");
  const std::string err_path = tmp_path("cli_stderr.txt");
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(MEANCYCLE_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  return fields;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("solve with every solver agrees and matches the library") {
  const auto r = run_cli("solve --n 6 --directed --seed 42 --solver all --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["agree"].get<bool>());
  REQUIRE(j["results"].size() == 3);
  CHECK(j["results"][0]["solver"] == "karp");
  CHECK(j["results"][1]["solver"] == "howard");
  CHECK(j["results"][2]["solver"] == "brute_force");
  const auto g = sample_complete(6, Orientation::directed, 42);
  const auto expect = karp_min_mean_cycle(g);
  for (const auto& res : j["results"]) {
    CHECK(res["min_mean"].get<double>() == doctest::Approx(expect.min_mean).epsilon(1e-12));
    CHECK(res["scaled_weight"].get<double>() ==
          doctest::Approx(6 * expect.min_mean).epsilon(1e-12));
    CHECK(res["length"].get<int>() == expect.witness.length());
    CHECK(res["certified_exact"].get<bool>());
  }
  CHECK(j["config"]["seed"].get<std::uint64_t>() == 42);
}

TEST_CASE("solve csv lists one row per solver with a vertex trail") {
  const auto r = run_cli("solve --n 7 --seed 3 --solver all --format csv");
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "solver,min_mean,scaled_weight,length,certified_exact,vertices");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    REQUIRE(fields.size() == 6);
    CHECK(std::stod(fields[1]) > 0);
    CHECK(std::stoi(fields[3]) >= 2);
    CHECK_FALSE(fields[5].empty());
  }
  // the max objective runs the threshold engine instead
  const auto rmax = run_cli("solve --n 7 --seed 3 --objective max --format csv");
  REQUIRE(rmax.code == 0);
  const auto mlines = split_lines(rmax.out);
  REQUIRE(mlines.size() == 2);
  CHECK(split_csv(mlines[1])[0] == "threshold");
}

TEST_CASE("usage problems exit with code 2") {
  CHECK(run_cli("solve --bogus").code == 2);
  CHECK(run_cli("solve --objective max --solver karp").code == 2);
  CHECK(run_cli("poisson --n 10 --trials 1 --format svg").code == 2);
  CHECK(run_cli("cdf-curve --grid 0:1").code == 2);
  CHECK(run_cli("analytic-table --k 5..2").code == 2);
  CHECK(run_cli("walkband --trials 5").code == 2);   // --A is required
  CHECK(run_cli("experiment --n 4 --trials 0").code == 2);
  CHECK(run_cli("nonsense").code == 2);
}

TEST_CASE("runtime failures exit with code 1") {
  const auto r = run_cli("solve --n 5 --out /nonexistent/dir/x.json");
  CHECK(r.code == 1);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("seed resolution prefers the flag over the environment") {
  const auto from_env = run_cli("sample --n 4", "MEANCYCLE_SEED=7");
  REQUIRE(from_env.code == 0);
  std::ostringstream expect;
  dump_csv(sample_complete(4, Orientation::directed, 7), expect);
  CHECK(from_env.out == expect.str());

  const auto from_flag = run_cli("sample --n 4 --seed 9", "MEANCYCLE_SEED=7");
  REQUIRE(from_flag.code == 0);
  std::ostringstream expect9;
  dump_csv(sample_complete(4, Orientation::directed, 9), expect9);
  CHECK(from_flag.out == expect9.str());
}

TEST_CASE("every run prints the resolved configuration before results") {
  const auto r = run_cli("census --n 30 --seed 5 --c 0.3 --kmax 4");
  REQUIRE(r.code == 0);
  const auto err_lines = split_lines(r.err);
  REQUIRE_FALSE(err_lines.empty());
  CHECK(err_lines[0].rfind("# config", 0) == 0);
  CHECK(err_lines[0].find("seed=5") != std::string::npos);
}

TEST_CASE("census json mirrors the sampled light-cycle counts") {
  const auto r = run_cli("census --n 60 --seed 3 --c 0.4 --kmax 6 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const auto census = count_light_cycles_sampled(60, Orientation::directed, 3, 0.4, 6);
  REQUIRE(j["counts"].size() == census.counts.size());
  long long total = 0;
  std::size_t i = 0;
  for (const auto& [k, cnt] : census.counts) {
    CHECK(j["counts"][i]["k"].get<int>() == k);
    CHECK(j["counts"][i]["count"].get<long long>() == cnt);
    total += cnt;
    ++i;
  }
  CHECK(j["total"].get<long long>() == total);
  CHECK(j["c"].get<double>() == 0.4);
}

TEST_CASE("analytic table replicates the limit pmf column exactly") {
  const auto r = run_cli("analytic-table --variant directed-mean --k 2..10,100 --format csv");
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "variant,k,empirical,stderr,analytic");
  const std::vector<int> ks = {2, 3, 4, 5, 6, 7, 8, 9, 10, 100};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto fields = split_csv(lines[i + 1]);
    REQUIRE(fields.size() == 5);
    CHECK(fields[0] == "directed-mean");
    CHECK(std::stoi(fields[1]) == ks[i]);
    CHECK(fields[2] == "nan");
    // 17 significant digits round-trip the double exactly
    CHECK(std::stod(fields[4]) == length_pmf(ks[i], LimitVariant::directed_mean));
  }
}

TEST_CASE("uniform count mode reports the expected-count formula") {
  const auto r =
      run_cli("analytic-table --delta 0.05 --A 2 --L 50..100 --n 1000000 --format json");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  SupercriticalParams p;
  p.A = 2;
  p.delta = 0.05;
  p.L1 = 50;
  p.L2 = 100;
  const auto rep = expected_uniform_light_count_report(p, Orientation::directed, 1e6);
  CHECK(j["count"].get<double>() == rep.count);
  CHECK(j["variance_ratio_bound"].get<double>() == rep.variance_ratio_bound);
  CHECK(j["variance_precondition_ok"].get<bool>() == rep.variance_precondition_ok);
  CHECK(j["L1"].get<int>() == 50);
  CHECK(j["L2"].get<int>() == 100);
}

TEST_CASE("cdf curve emits the limit law over the grid") {
  const auto r = run_cli("cdf-curve --variant undirected-max --grid 0:1:0.01 --format csv");
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 102);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    REQUIRE(fields.size() == 5);
    const double c = std::stod(fields[1]);
    CHECK(std::stod(fields[4]) == limit_cdf(c, LimitVariant::undirected_max));
  }
  // default grids follow the variant's visible domain
  const auto mean = run_cli("cdf-curve --variant directed-mean --format csv");
  REQUIRE(mean.code == 0);
  const auto mean_lines = split_lines(mean.out);
  CHECK(mean_lines.size() == 52);
  CHECK(std::stod(split_csv(mean_lines.back())[1]) == doctest::Approx(0.5).epsilon(1e-12));
  const auto mx = run_cli("cdf-curve --variant directed-max --format csv");
  REQUIRE(mx.code == 0);
  const auto max_lines = split_lines(mx.out);
  CHECK(max_lines.size() == 122);
  CHECK(std::stod(split_csv(max_lines.back())[1]) == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("experiment output is byte-identical to the library emitter") {
  const std::string cli_path = tmp_path("cli_experiment.json");
  const auto r = run_cli("experiment --n 16 --trials 40 --seed 5 --workers 2 "
                         "--grid 0:0.3:0.1 --format json --out " + cli_path);
  REQUIRE(r.code == 0);

  ExperimentConfig cfg;
  cfg.n = 16;
  cfg.trials = 40;
  cfg.base_seed = 5;
  cfg.c_grid = {0.0, 0.1, 0.2, 0.3};
  cfg.workers = 2;
  const auto report = compare_to_limit(run_trials(cfg), cfg, LimitVariant::directed_mean);
  const std::string lib_path = tmp_path("lib_experiment.json");
  emit(report, lib_path, EmitFormat::json);

  CHECK(slurp(cli_path) == slurp(lib_path));
  std::remove(cli_path.c_str());
  std::remove(lib_path.c_str());
}

TEST_CASE("experiment stdout carries the cdf table then the pmf table") {
  const auto r = run_cli("experiment --n 12 --trials 20 --seed 8 --grid 0:0.2:0.1 --format csv");
  REQUIRE(r.code == 0);
  const auto cdf_at = r.out.find("variant,c,empirical,stderr,analytic");
  const auto pmf_at = r.out.find("variant,k,empirical,stderr,analytic");
  REQUIRE(cdf_at != std::string::npos);
  REQUIRE(pmf_at != std::string::npos);
  CHECK(cdf_at < pmf_at);
  CHECK(r.out.find("\n\n") != std::string::npos);
}

TEST_CASE("poisson output is byte-identical to the library emitter") {
  const std::string cli_path = tmp_path("cli_poisson.json");
  const auto r = run_cli("poisson --n 40 --trials 100 --c 0.3 --kmax 4 --seed 11 "
                         "--workers 2 --format json --out " + cli_path);
  REQUIRE(r.code == 0);
  const auto report = poisson_check(40, 0.3, 4, 100, 11, Orientation::directed, 2);
  const std::string lib_path = tmp_path("lib_poisson.json");
  emit(report, lib_path, EmitFormat::json);
  CHECK(slurp(cli_path) == slurp(lib_path));
  std::remove(cli_path.c_str());
  std::remove(lib_path.c_str());
}

TEST_CASE("walkband run matches the library and its trivial regime") {
  const std::string cli_path = tmp_path("cli_walkband.csv");
  const auto r = run_cli("walkband --L 40 --A 50 --trials 60 --seed 1 --format csv --out " +
                         cli_path);
  REQUIRE(r.code == 0);
  const auto report = walk_band_experiment(40, 50.0, 60, 1);
  const std::string lib_path = tmp_path("lib_walkband.csv");
  emit(report, lib_path, EmitFormat::csv);
  CHECK(slurp(cli_path) == slurp(lib_path));
  CHECK(report.p_hat == 1.0);
  std::remove(cli_path.c_str());
  std::remove(lib_path.c_str());
}

TEST_CASE("supercritical rows match the library run") {
  const std::string cli_path = tmp_path("cli_super.csv");
  const auto r = run_cli("supercritical --n 64,128 --trials 40 --seed 2 --workers 2 "
                         "--format csv --out " + cli_path);
  REQUIRE(r.code == 0);
  const auto report = supercritical_length_experiment({64, 128}, 40, 2);
  const std::string lib_path = tmp_path("lib_super.csv");
  emit(report, lib_path, EmitFormat::csv);
  CHECK(slurp(cli_path) == slurp(lib_path));
  const auto lines = split_lines(slurp(lib_path));
  REQUIRE(lines.size() == 3);
  std::remove(cli_path.c_str());
  std::remove(lib_path.c_str());
}

TEST_CASE("cdf curve svg renders the analytic polyline") {
  const auto r = run_cli("cdf-curve --variant directed-mean --format svg");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("<svg", 0) == 0);
  CHECK(r.out.find("polyline") != std::string::npos);
  CHECK(r.out.find("</svg>") != std::string::npos);
}

TEST_CASE("version flag reports the artifact version") {
  const auto r = run_cli("--version");
  CHECK(r.code == 0);
  CHECK(r.out.find(artifact_version()) != std::string::npos);
}

} // TEST_SUITE
