// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <string>

#include "risopt/experiment.hpp"
#include "risopt/io.hpp"
#include "test_util.hpp"

using namespace risopt;
using risopt::test::random_instance;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/risopt_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("channel record round-trips through JSON") {
  RngStream rng(61, 0);
  const ChannelInstance ch = random_instance(rng, 6, true);
  TempFile f("channel.json");
  save_channel(ch, f.path);
  const ChannelInstance back = load_channel(f.path);
  REQUIRE(back.size() == ch.size());
  CHECK(back.h0() == ch.h0());
  for (int e = 0; e < ch.size(); ++e) CHECK(back.h(e) == ch.h(e));
}

TEST_CASE("channel record validates the declared element count") {
  const std::string text = R"({"n": 3, "h0": [0, 0], "h": [[1, 0], [0, 1]]})";
  TempFile f("mismatch.json");
  write_text_file(f.path, text);
  CHECK_THROWS_WITH_AS(load_channel(f.path), doctest::Contains("declared n=3"), ParseError);
}

TEST_CASE("malformed JSON reports the line") {
  TempFile f("broken.json");
  write_text_file(f.path, "{\n  \"h0\": [0, 0],\n  \"h\": [[1, 0]\n}\n");
  CHECK_THROWS_WITH_AS(load_channel(f.path), doctest::Contains((f.path + ":").c_str()), ParseError);
}

TEST_CASE("missing fields are rejected") {
  TempFile f("missing.json");
  write_text_file(f.path, R"({"h": [[1, 0]]})");
  CHECK_THROWS_AS(load_channel(f.path), ParseError);
  write_text_file(f.path, R"({"h0": [1, 0]})");
  CHECK_THROWS_AS(load_channel(f.path), ParseError);
}

TEST_CASE("scenario file round-trips including geometry") {
  ScenarioConfig s;
  s.kappa = 10.0;
  s.seed = 1234;
  s.direct_link_blocked = true;
  RisGeometry geom{16, 4, 0.5, 0.25};
  TempFile f("scenario.json");
  write_text_file(f.path, scenario_to_json(s, geom).dump(2));
  const ScenarioFile back = load_scenario(f.path);
  CHECK(back.scenario.kappa == 10.0);
  CHECK(back.scenario.seed == 1234);
  CHECK(back.scenario.direct_link_blocked);
  CHECK(back.scenario.bs_position == s.bs_position);
  REQUIRE(back.geometry.has_value());
  CHECK(back.geometry->n_y == 16);
  CHECK(back.geometry->d_z == 0.25);
}

TEST_CASE("format_g12 pins 12 significant digits") {
  CHECK(format_g12(1.0) == "1");
  CHECK(format_g12(0.1) == "0.1");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_g12(std::nan("")) == "nan");
  CHECK(format_g12(1.5e-11) == "1.5e-11");
}

TEST_CASE("solve result serialization carries the config and metrics") {
  RngStream rng(62, 0);
  const ChannelInstance ch = random_instance(rng, 4, true);
  const SolveResult r = algorithm3(ch, 4);
  const auto j = solve_result_to_json(r, "algorithm3");
  CHECK(j["solver"] == "algorithm3");
  CHECK(j["config"].size() == 4);
  CHECK(j["objective"].get<double>() == r.objective);
  CHECK(j["steps_executed"].get<int>() == r.steps_executed);

  const ChannelInstance blocked = random_instance(rng, 4, false);
  const auto jb = solve_result_to_json(algorithm3(blocked, 4), "algorithm3");
  CHECK(jb["snr_boost"].is_null());  // beta0 = 0: boost undefined
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("experiment");

TEST_CASE("experiment output is byte-identical across worker counts and reruns") {
  ExperimentConfig cfg;
  cfg.scenario.seed = 7;
  cfg.solvers = {"algorithm2", "upq"};
  cfg.n_list = {16};
  cfg.k_list = {2};
  cfg.trials = 40;

  cfg.workers = 1;
  const ExperimentOutput a = run_experiment(cfg);
  cfg.workers = 4;
  const ExperimentOutput b = run_experiment(cfg);
  CHECK(a.records_csv == b.records_csv);
  CHECK(a.cdf_csv == b.cdf_csv);
  cfg.workers = 1;
  const ExperimentOutput c = run_experiment(cfg);
  CHECK(a.records_csv == c.records_csv);

  // the records re-parse: header plus trials x solvers rows
  size_t lines = 0;
  for (char ch : a.records_csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 40 * 2);
}

TEST_CASE("per-trial optimum dominates UPQ") {
  ExperimentConfig cfg;
  cfg.scenario.seed = 8;
  cfg.solvers = {"algorithm2", "upq"};
  cfg.n_list = {32};
  cfg.k_list = {2};
  cfg.trials = 50;
  cfg.workers = 2;
  const ExperimentOutput out = run_experiment(cfg);

  // parse objective column per solver
  std::istringstream in(out.records_csv);
  std::string line;
  std::getline(in, line);  // header
  double sum_a2 = 0.0, sum_upq = 0.0;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    REQUIRE(cols.size() == 11);
    const double obj = std::stod(cols[5]);
    if (cols[1] == "algorithm2")
      sum_a2 += obj;
    else
      sum_upq += obj;
  }
  CHECK(sum_a2 >= sum_upq);
}

TEST_CASE("bench produces one cell per solver/N/K") {
  BenchConfig cfg;
  cfg.solvers = {"algorithm2", "upq"};
  cfg.n_list = {8, 16};
  cfg.k_list = {2};
  cfg.trials = 5;
  const auto cells = run_bench(cfg);
  CHECK(cells.size() == 4);
  CHECK(bench_total(cells, "algorithm2", 8, 2) >= 0.0);
  const std::string table = format_bench_tables(cells, cfg);
  CHECK(table.find("N=16") != std::string::npos);
  CHECK(table.find("algorithm2") != std::string::npos);
}

TEST_CASE("bench ordering: full sweep slowest, quantization fastest") {
  BenchConfig cfg;
  cfg.solvers = {"algorithm1", "algorithm2", "upq"};
  cfg.n_list = {200, 500};
  cfg.k_list = {4};
  cfg.trials = 60;
  cfg.scenario.seed = 17;
  const auto cells = run_bench(cfg);
  for (int n : cfg.n_list) {
    const double t1 = bench_total(cells, "algorithm1", n, 4);
    const double t2 = bench_total(cells, "algorithm2", n, 4);
    const double tq = bench_total(cells, "upq", n, 4);
    CHECK(t1 > t2);
    CHECK(tq < t2);
    CHECK(tq < t1);
  }
}

TEST_CASE("experiment --verify accepts optimal output") {
  ExperimentConfig cfg;
  cfg.scenario.seed = 21;
  cfg.solvers = {"algorithm3", "upq"};
  cfg.n_list = {12};
  cfg.k_list = {4};
  cfg.trials = 25;
  cfg.verify = true;
  CHECK_NOTHROW(run_experiment(cfg));
}

TEST_CASE("run_solver rejects unknown labels") {
  RngStream rng(63, 0);
  const ChannelInstance ch = random_instance(rng, 4, true);
  CHECK_THROWS_AS(run_solver("gradient_descent", ch, 2), std::invalid_argument);
  CHECK(is_known_solver("candidate_enum"));
  CHECK_FALSE(is_known_solver("das"));
}

TEST_SUITE_END();
