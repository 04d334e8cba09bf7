// SPDX-License-Identifier: Apache-2.0
//
// risopt command-line front end: single-instance solves, Monte-Carlo
// experiments, timing benchmarks, multicast runs, and the efficiency table.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risopt/experiment.hpp"
#include "risopt/io.hpp"
#include "risopt/metrics.hpp"

using namespace risopt;

namespace {

constexpr int kExitParseError = 2;
constexpr int kExitVerifyFailed = 3;

struct CommonOptions {
  double kappa = 0.0;
  uint64_t seed = 0;
  bool blocked_direct = false;
  std::string scenario_path;
  bool kappa_set = false, seed_set = false, blocked_set = false;
};

// Scenario from file (if given), then explicit flags on top.
std::pair<ScenarioConfig, std::optional<RisGeometry>> resolve_scenario(const CommonOptions& c) {
  ScenarioConfig scenario;
  std::optional<RisGeometry> geometry;
  if (!c.scenario_path.empty()) {
    const ScenarioFile file = load_scenario(c.scenario_path);
    scenario = file.scenario;
    geometry = file.geometry;
  }
  if (c.kappa_set) scenario.kappa = c.kappa;
  if (c.seed_set) scenario.seed = c.seed;
  if (c.blocked_set) scenario.direct_link_blocked = c.blocked_direct;
  scenario.validate();
  return {scenario, geometry};
}

std::string stem_of(const std::string& path) {
  const size_t dot = path.rfind('.');
  const size_t slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_text_file(path, content);
}

int cmd_solve(const std::string& instance_path, int k_levels, const std::string& solver,
              bool verify, const std::string& format) {
  const ChannelInstance ch = load_channel(instance_path);
  const SolveResult result = run_solver(solver, ch, k_levels);

  if (format == "csv") {
    std::cout << "solver,n,k,objective,snr_boost,steps_executed,best_step,elapsed_s,config\n"
              << solver << ',' << ch.size() << ',' << k_levels << ','
              << format_g12(result.objective) << ',' << format_g12(result.snr_boost) << ','
              << result.steps_executed << ',' << result.best_step << ','
              << format_g12(result.elapsed_seconds) << ',';
    for (size_t i = 0; i < result.config.indices.size(); ++i)
      std::cout << (i ? " " : "") << result.config.indices[i];
    std::cout << "\n";
  } else {
    std::cout << solve_result_to_json(result, solver).dump(2) << "\n";
  }

  if (verify) {
    if (!verify_certificate(ch, result.config) && solver != "upq") {
      std::cerr << "verify: configuration fails the optimality certificate\n";
      return kExitVerifyFailed;
    }
    const SolveResult reference = [&] {
      try {
        return exhaustive_oracle(ch, k_levels);
      } catch (const OracleBudgetError&) {
        return candidate_enum_oracle(ch, k_levels);
      }
    }();
    const double tol = 1e-9 * std::max(std::abs(reference.objective), 1e-300);
    const bool optimal_solver = solver != "upq";
    if (optimal_solver && std::abs(result.objective - reference.objective) > tol) {
      std::cerr << "verify: objective " << format_g12(result.objective)
                << " disagrees with oracle " << format_g12(reference.objective) << "\n";
      return kExitVerifyFailed;
    }
    if (!optimal_solver && result.objective > reference.objective + tol) {
      std::cerr << "verify: suboptimal solver exceeds the oracle optimum\n";
      return kExitVerifyFailed;
    }
    std::cerr << "verify: ok\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risopt: globally optimal K-ary discrete phase selection for RIS links"};
  app.require_subcommand(1);

  CommonOptions common;

  // solve
  std::string instance_path, solve_solver = "algorithm2", solve_format = "json";
  int solve_k = 2;
  bool verify = false;
  CLI::App* solve = app.add_subcommand("solve", "Solve one channel-record file");
  solve->add_option("instance", instance_path, "channel record JSON file")->required();
  solve->add_option("--k", solve_k, "number of discrete phases")->check(CLI::Range(2, 1 << 20));
  solve->add_option("--solver", solve_solver,
                    "algorithm1|algorithm2|algorithm3|upq|candidate_enum|exhaustive");
  solve->add_flag("--verify", verify, "cross-check against an independent oracle");
  solve->add_option("--format", solve_format, "json (default) or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // experiment
  ExperimentConfig exp_cfg;
  std::string exp_out;
  CLI::App* experiment = app.add_subcommand("experiment", "Monte-Carlo experiment over channels");
  experiment->add_option("--solver", exp_cfg.solvers, "solvers to run (repeatable)");
  experiment->add_option("--n", exp_cfg.n_list, "RIS sizes (repeatable)");
  experiment->add_option("--k", exp_cfg.k_list, "phase counts (repeatable)");
  experiment->add_option("--trials", exp_cfg.trials, "trials per (N, K)")->check(CLI::PositiveNumber);
  experiment->add_option("--workers", exp_cfg.workers, "worker threads (0 = RISOPT_WORKERS/auto)");
  experiment->add_flag("--verify", exp_cfg.verify,
                       "check the optimality certificate on every emitted solve");
  experiment->add_option("--out", exp_out, "records CSV path ('-' = stdout)");

  // bench
  BenchConfig bench_cfg;
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench", "Wall-time totals per solver and N");
  bench->add_option("--solver", bench_cfg.solvers, "solvers to time (repeatable)");
  bench->add_option("--n", bench_cfg.n_list, "RIS sizes (repeatable)");
  bench->add_option("--k", bench_cfg.k_list, "phase counts (repeatable)");
  bench->add_option("--trials", bench_cfg.trials, "realizations per cell")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "optional CSV path for the raw cells");

  // multicast
  MulticastExperimentConfig mc_cfg;
  std::string mc_out;
  CLI::App* multicast = app.add_subcommand("multicast", "Max-min SNR experiment across users");
  multicast->add_option("--users", mc_cfg.users, "number of receivers (>= 2)")
      ->check(CLI::Range(2, 1 << 16));
  multicast->add_option("--n", mc_cfg.n, "RIS size");
  multicast->add_option("--k", mc_cfg.k, "phase count");
  multicast->add_option("--trials", mc_cfg.trials, "trials")->check(CLI::PositiveNumber);
  multicast->add_option("--workers", mc_cfg.workers, "worker threads (0 = RISOPT_WORKERS/auto)");
  multicast->add_option("--out", mc_out, "records CSV path ('-' = stdout)");

  // table1
  CLI::App* table1 = app.add_subcommand("table1", "Print the UPQ efficiency table");

  for (CLI::App* sub : {solve, experiment, bench, multicast}) {
    sub->add_option("--kappa", common.kappa, "Rician factor")->each([&](const std::string&) {
      common.kappa_set = true;
    });
    sub->add_option("--seed", common.seed, "RNG seed")->each([&](const std::string&) {
      common.seed_set = true;
    });
    sub->add_flag("--blocked-direct", common.blocked_direct, "block the BS-UE direct link")
        ->each([&](const std::string&) { common.blocked_set = true; });
    sub->add_option("--scenario", common.scenario_path, "scenario JSON file");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(instance_path, solve_k, solve_solver, verify, solve_format);

    if (experiment->parsed()) {
      auto [scenario, geometry] = resolve_scenario(common);
      exp_cfg.scenario = scenario;
      exp_cfg.geometry_override = geometry;
      if (geometry && experiment->count("--n") == 0) exp_cfg.n_list = {geometry->size()};
      const ExperimentOutput out = run_experiment(exp_cfg);
      emit(exp_out, out.records_csv);
      if (!exp_out.empty() && exp_out != "-") {
        write_text_file(stem_of(exp_out) + "_summary.csv", out.summary_csv);
        write_text_file(stem_of(exp_out) + "_cdf.csv", out.cdf_csv);
        std::cerr << "wrote " << exp_out << ", " << stem_of(exp_out) << "_summary.csv, "
                  << stem_of(exp_out) << "_cdf.csv\n";
      }
      return 0;
    }

    if (bench->parsed()) {
      auto [scenario, geometry] = resolve_scenario(common);
      bench_cfg.scenario = scenario;
      const auto cells = run_bench(bench_cfg);
      std::cout << format_bench_tables(cells, bench_cfg);
      if (!bench_out.empty()) write_text_file(bench_out, bench_cells_csv(cells));
      return 0;
    }

    if (multicast->parsed()) {
      auto [scenario, geometry] = resolve_scenario(common);
      mc_cfg.scenario = scenario;
      const MulticastExperimentOutput out = run_multicast_experiment(mc_cfg);
      emit(mc_out, out.records_csv);
      if (!mc_out.empty() && mc_out != "-")
        write_text_file(stem_of(mc_out) + "_cdf.csv", out.cdf_csv);
      std::printf("mean min-SNR gain over UPQ: %.3f dB (solve >= upq in %.1f%% of trials)\n",
                  out.mean_gain_db, 100.0 * out.dominance_fraction);
      return 0;
    }

    if (table1->parsed()) {
      std::cout << "k,e_inf,gain_db_vs_k2\n";
      for (int k : {2, 3, 4, 6, 8}) {
        std::cout << k << ',' << format_g12(upq_efficiency(k)) << ',';
        std::cout << (k == 2 ? std::string("0") : format_g12(efficiency_gain_db(k))) << "\n";
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const VerificationError& e) {
    std::cerr << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
