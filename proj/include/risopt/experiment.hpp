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

#ifndef RISOPT_EXPERIMENT_HPP
#define RISOPT_EXPERIMENT_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/metrics.hpp"
#include "risopt/multicast.hpp"
#include "risopt/solvers.hpp"

namespace risopt {

/// An emitted solve failed the optimality certificate under --verify.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested worker count, or RISOPT_WORKERS from the environment, or the
/// hardware concurrency. Outputs are byte-identical for any value.
int resolve_workers(int requested);

/// Index-parallel loop; bodies must only write state owned by their index.
void parallel_for(int count, int workers, const std::function<void(int)>& body);

/// Dispatch by solver label: algorithm1 | algorithm2 | algorithm3 | upq |
/// candidate_enum | exhaustive. algorithm2 falls back to the grouped solver
/// if duplicate keys appear in a sampled channel.
SolveResult run_solver(const std::string& name, const ChannelInstance& ch, int k_levels);

bool is_known_solver(const std::string& name);

struct ExperimentConfig {
  ScenarioConfig scenario;
  std::vector<std::string> solvers{"algorithm2", "upq"};
  std::vector<int> n_list{64};
  std::vector<int> k_list{2};
  int trials = 1000;
  int workers = 0;  // 0 = resolve from environment
  bool verify = false;  // check the optimality certificate on every solve
  std::optional<RisGeometry> geometry_override;  // used when its size matches n
};

/// The three emitted documents. Records and CDF are byte-deterministic for
/// a fixed seed regardless of worker count; the summary carries wall-clock
/// totals and is excluded from that contract.
struct ExperimentOutput {
  std::string records_csv;
  std::string summary_csv;
  std::string cdf_csv;
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg);

struct BenchConfig {
  ScenarioConfig scenario;  // kappa 0 by default (NLOS realizations)
  std::vector<std::string> solvers{"algorithm1", "algorithm2", "upq"};
  std::vector<int> n_list{10, 100, 1000};
  std::vector<int> k_list{2};
  int trials = 1000;
};

struct BenchCell {
  std::string solver;
  int n = 0;
  int k = 0;
  double total_seconds = 0.0;  // solver call only, channel generation excluded
};

std::vector<BenchCell> run_bench(const BenchConfig& cfg);

/// One table per K: rows are methods, columns are N.
std::string format_bench_tables(const std::vector<BenchCell>& cells, const BenchConfig& cfg);
std::string bench_cells_csv(const std::vector<BenchCell>& cells);

double bench_total(const std::vector<BenchCell>& cells, const std::string& solver, int n, int k);

struct MulticastExperimentConfig {
  ScenarioConfig scenario;
  int users = 4;
  int n = 64;
  int k = 2;
  int trials = 1000;
  int workers = 0;
};

struct MulticastExperimentOutput {
  std::string records_csv;
  std::string cdf_csv;
  double mean_gain_db = 0.0;       // mean of per-trial 10 log10(solve/upq)
  double dominance_fraction = 0.0; // share of trials with solve >= upq
};

MulticastExperimentOutput run_multicast_experiment(const MulticastExperimentConfig& cfg);

}  // namespace risopt

#endif  // RISOPT_EXPERIMENT_HPP
