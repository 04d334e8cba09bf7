// SPDX-License-Identifier: Apache-2.0
//
// risopt - globally optimal K-ary discrete phase selection for RIS links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risopt/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "risopt/io.hpp"

namespace risopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RISOPT_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(int count, int workers, const std::function<void(int)>& body) {
  if (count <= 0) return;
  if (workers <= 1 || count == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int spawn = std::min(workers, count);
  pool.reserve(static_cast<size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool is_known_solver(const std::string& name) {
  return name == "algorithm1" || name == "algorithm2" || name == "algorithm3" ||
         name == "upq" || name == "candidate_enum" || name == "exhaustive";
}

SolveResult run_solver(const std::string& name, const ChannelInstance& ch, int k_levels) {
  if (name == "algorithm1") return algorithm1(ch, k_levels);
  if (name == "algorithm2") {
    try {
      return algorithm2(ch, k_levels);
    } catch (const DuplicatePhaseError&) {
      return algorithm3(ch, k_levels);
    }
  }
  if (name == "algorithm3") return algorithm3(ch, k_levels);
  if (name == "upq") return upq_result(ch, k_levels);
  if (name == "candidate_enum") return candidate_enum_oracle(ch, k_levels);
  if (name == "exhaustive") return exhaustive_oracle(ch, k_levels);
  throw std::invalid_argument("unknown solver '" + name + "'");
}

namespace {

constexpr const char* kRecordsHeader =
    "trial,solver,n,k,kappa,objective,snr_boost,rate_bpshz,normalized_power,"
    "steps_executed,best_step\n";

std::string record_row(const TrialRecord& r) {
  std::ostringstream os;
  os << r.trial << ',' << r.solver << ',' << r.n << ',' << r.k << ',' << format_g12(r.kappa)
     << ',' << format_g12(r.objective) << ',' << format_g12(r.snr_boost) << ','
     << format_g12(r.rate) << ',' << format_g12(r.norm_power) << ',' << r.steps_executed << ','
     << r.best_step << '\n';
  return os.str();
}

TrialRecord make_record(int trial, const std::string& solver, int n, int k,
                        const ScenarioConfig& sc, const ChannelInstance& ch,
                        const SolveResult& res) {
  TrialRecord r;
  r.trial = trial;
  r.solver = solver;
  r.n = n;
  r.k = k;
  r.kappa = sc.kappa;
  r.objective = res.objective;
  r.snr_boost = res.snr_boost;
  r.rate = rate_bps_hz(res.objective, sc.tx_power_dbm, sc.noise_power_dbm);
  r.norm_power = normalized_power(ch, res.config);
  r.steps_executed = res.steps_executed;
  r.best_step = res.best_step;
  r.elapsed_seconds = res.elapsed_seconds;
  return r;
}

RisGeometry geometry_for(const ExperimentConfig& cfg, int n) {
  if (cfg.geometry_override && cfg.geometry_override->size() == n) return *cfg.geometry_override;
  return RisGeometry::for_elements(n);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  for (const std::string& s : cfg.solvers)
    if (!is_known_solver(s)) throw std::invalid_argument("run_experiment: unknown solver '" + s + "'");
  for (int n : cfg.n_list)
    if (n < 1) throw std::invalid_argument("run_experiment: N must be >= 1");
  for (int k : cfg.k_list)
    if (k < 2) throw std::invalid_argument("run_experiment: K must be >= 2");

  const int workers = resolve_workers(cfg.workers);
  const int n_solvers = static_cast<int>(cfg.solvers.size());

  std::string records = kRecordsHeader;
  std::ostringstream summary;
  summary << "solver,n,k,kappa,trials,mean_objective,mean_rate_bpshz,mean_normalized_power,"
             "mean_snr_boost_db,p1_snr_boost_db,p50_snr_boost_db,total_solver_seconds\n";
  std::ostringstream cdf;
  cdf << "solver,n,k,metric,value,cum_prob\n";

  for (int n : cfg.n_list) {
    const RisGeometry geom = geometry_for(cfg, n);
    for (int k : cfg.k_list) {
      // Workers own disjoint trial indices; rows are assembled in trial
      // order afterwards, so the merge is independent of scheduling.
      std::vector<std::vector<TrialRecord>> per_trial(static_cast<size_t>(cfg.trials));
      parallel_for(cfg.trials, workers, [&](int trial) {
        const ChannelInstance ch =
            sample_channel(geom, cfg.scenario, static_cast<uint64_t>(trial));
        auto& rows = per_trial[static_cast<size_t>(trial)];
        rows.reserve(cfg.solvers.size());
        for (const std::string& solver : cfg.solvers) {
          const SolveResult res = run_solver(solver, ch, k);
          if (cfg.verify && solver != "upq" && !verify_certificate(ch, res.config))
            throw VerificationError("verify: " + solver + " failed the optimality certificate at trial " +
                                    std::to_string(trial));
          rows.push_back(make_record(trial, solver, n, k, cfg.scenario, ch, res));
        }
      });

      std::vector<std::vector<double>> boost_db(static_cast<size_t>(n_solvers));
      std::vector<double> obj_sum(static_cast<size_t>(n_solvers), 0.0);
      std::vector<double> rate_sum(static_cast<size_t>(n_solvers), 0.0);
      std::vector<double> np_sum(static_cast<size_t>(n_solvers), 0.0);
      std::vector<double> time_sum(static_cast<size_t>(n_solvers), 0.0);
      for (const auto& rows : per_trial)
        for (size_t s = 0; s < rows.size(); ++s) {
          records += record_row(rows[s]);
          obj_sum[s] += rows[s].objective;
          rate_sum[s] += rows[s].rate;
          np_sum[s] += rows[s].norm_power;
          time_sum[s] += rows[s].elapsed_seconds;
          if (std::isfinite(rows[s].snr_boost) && rows[s].snr_boost > 0.0)
            boost_db[s].push_back(to_db(rows[s].snr_boost));
        }

      for (int s = 0; s < n_solvers; ++s) {
        const double inv = 1.0 / cfg.trials;
        summary << cfg.solvers[static_cast<size_t>(s)] << ',' << n << ',' << k << ','
                << format_g12(cfg.scenario.kappa) << ',' << cfg.trials << ','
                << format_g12(obj_sum[static_cast<size_t>(s)] * inv) << ','
                << format_g12(rate_sum[static_cast<size_t>(s)] * inv) << ','
                << format_g12(np_sum[static_cast<size_t>(s)] * inv) << ',';
        auto& db = boost_db[static_cast<size_t>(s)];
        if (!db.empty()) {
          const Aggregate agg(db);
          summary << format_g12(agg.mean()) << ',' << format_g12(agg.percentile(1.0)) << ','
                  << format_g12(agg.percentile(50.0));
          for (const auto& [value, prob] : agg.cdf())
            cdf << cfg.solvers[static_cast<size_t>(s)] << ',' << n << ',' << k
                << ",snr_boost_db," << format_g12(value) << ',' << format_g12(prob) << '\n';
        } else {
          summary << "nan,nan,nan";
          std::vector<double> obj_db;
          obj_db.reserve(per_trial.size());
          for (const auto& rows : per_trial)
            if (rows[static_cast<size_t>(s)].objective > 0.0)
              obj_db.push_back(to_db(rows[static_cast<size_t>(s)].objective));
          if (!obj_db.empty())
            for (const auto& [value, prob] : Aggregate(obj_db).cdf())
              cdf << cfg.solvers[static_cast<size_t>(s)] << ',' << n << ',' << k
                  << ",objective_db," << format_g12(value) << ',' << format_g12(prob) << '\n';
        }
        summary << ',' << format_g12(time_sum[static_cast<size_t>(s)]) << '\n';
      }
    }
  }
  return ExperimentOutput{std::move(records), summary.str(), cdf.str()};
}

std::vector<BenchCell> run_bench(const BenchConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_bench: trials must be >= 1");
  std::vector<BenchCell> cells;
  for (int k : cfg.k_list)
    for (int n : cfg.n_list)
      for (const std::string& solver : cfg.solvers) cells.push_back(BenchCell{solver, n, k, 0.0});

  // Serial on purpose: totals mirror a single-stream run, and all solvers
  // see the same realization in each trial.
  for (BenchCell& cell : cells) {
    const RisGeometry geom = RisGeometry::for_elements(cell.n);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const ChannelInstance ch = sample_channel(geom, cfg.scenario, static_cast<uint64_t>(trial));
      const auto t0 = Clock::now();
      run_solver(cell.solver, ch, cell.k);
      cell.total_seconds += seconds_since(t0);
    }
  }
  return cells;
}

double bench_total(const std::vector<BenchCell>& cells, const std::string& solver, int n, int k) {
  for (const BenchCell& c : cells)
    if (c.solver == solver && c.n == n && c.k == k) return c.total_seconds;
  throw std::invalid_argument("bench_total: no such cell");
}

std::string format_bench_tables(const std::vector<BenchCell>& cells, const BenchConfig& cfg) {
  std::ostringstream os;
  for (int k : cfg.k_list) {
    os << "execution time [s] totals over " << cfg.trials << " channel realizations, K=" << k
       << "\n";
    os << "method";
    for (int n : cfg.n_list) os << "\tN=" << n;
    os << "\n";
    for (const std::string& solver : cfg.solvers) {
      os << solver;
      for (int n : cfg.n_list) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", bench_total(cells, solver, n, k));
        os << '\t' << buf;
      }
      os << "\n";
    }
    os << "\n";
  }
  return os.str();
}

std::string bench_cells_csv(const std::vector<BenchCell>& cells) {
  std::string out = "solver,n,k,total_seconds\n";
  for (const BenchCell& c : cells)
    out += c.solver + "," + std::to_string(c.n) + "," + std::to_string(c.k) + "," +
           format_g12(c.total_seconds) + "\n";
  return out;
}

MulticastExperimentOutput run_multicast_experiment(const MulticastExperimentConfig& cfg) {
  if (cfg.users < 2) throw std::invalid_argument("run_multicast_experiment: U must be >= 2");
  if (cfg.trials < 1) throw std::invalid_argument("run_multicast_experiment: trials must be >= 1");
  const int workers = resolve_workers(cfg.workers);
  const RisGeometry geom = RisGeometry::for_elements(cfg.n);

  struct Row {
    double solve_db, upq_db, gain_db;
    int anchor, steps;
  };
  std::vector<Row> rows(static_cast<size_t>(cfg.trials));

  parallel_for(cfg.trials, workers, [&](int trial) {
    MulticastInstance inst;
    inst.users.reserve(static_cast<size_t>(cfg.users));
    for (int u = 0; u < cfg.users; ++u)
      inst.users.push_back(sample_channel(geom, cfg.scenario, static_cast<uint64_t>(trial),
                                          static_cast<uint64_t>(u)));
    inst.noise_power_dbm.assign(static_cast<size_t>(cfg.users), cfg.scenario.noise_power_dbm);
    const MulticastResult solve = multicast_solve(inst, cfg.k, cfg.scenario.tx_power_dbm);
    const MulticastResult base = multicast_upq(inst, cfg.k, cfg.scenario.tx_power_dbm);
    Row& r = rows[static_cast<size_t>(trial)];
    r.solve_db = to_db(solve.min_snr);
    r.upq_db = to_db(base.min_snr);
    r.gain_db = r.solve_db - r.upq_db;
    r.anchor = solve.anchor;
    r.steps = solve.steps_executed;
  });

  std::string records = "trial,min_snr_solve_db,min_snr_upq_db,gain_db,anchor,steps_executed\n";
  double gain_sum = 0.0;
  int dominated = 0;
  std::vector<double> solve_db, upq_db;
  solve_db.reserve(rows.size());
  upq_db.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    records += std::to_string(i) + "," + format_g12(r.solve_db) + "," + format_g12(r.upq_db) +
               "," + format_g12(r.gain_db) + "," + std::to_string(r.anchor) + "," +
               std::to_string(r.steps) + "\n";
    gain_sum += r.gain_db;
    if (r.gain_db >= 0.0) ++dominated;
    solve_db.push_back(r.solve_db);
    upq_db.push_back(r.upq_db);
  }

  std::ostringstream cdf;
  cdf << "series,metric,value,cum_prob\n";
  for (const auto& [value, prob] : Aggregate(solve_db).cdf())
    cdf << "multicast_solve,min_snr_db," << format_g12(value) << ',' << format_g12(prob) << '\n';
  for (const auto& [value, prob] : Aggregate(upq_db).cdf())
    cdf << "multicast_upq,min_snr_db," << format_g12(value) << ',' << format_g12(prob) << '\n';

  MulticastExperimentOutput out;
  out.records_csv = std::move(records);
  out.cdf_csv = cdf.str();
  out.mean_gain_db = gain_sum / cfg.trials;
  out.dominance_fraction = static_cast<double>(dominated) / cfg.trials;
  return out;
}

}  // namespace risopt
