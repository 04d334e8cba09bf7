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

#ifndef RISOPT_MULTICAST_HPP
#define RISOPT_MULTICAST_HPP

#include <vector>

#include "risopt/phase.hpp"
#include "risopt/solvers.hpp"

namespace risopt {

/// Max-min SNR instance: U receivers sharing the RIS, each with its own
/// direct and cascaded coefficients and noise floor.
struct MulticastInstance {
  std::vector<ChannelInstance> users;
  std::vector<double> noise_power_dbm;  // per user; defaulted to -90 if empty

  int n_elements() const { return users.empty() ? 0 : users.front().size(); }
  int n_users() const { return static_cast<int>(users.size()); }
  void validate() const;
};

struct MulticastResult {
  PhaseConfig config;
  double min_snr = 0.0;       // linear, min over users
  int anchor = 0;             // index of the winning anchor user
  int steps_executed = 0;     // loop iterations summed over anchors
  int phase_updates = 0;      // single-element updates summed over anchors
  double elapsed_seconds = 0.0;
};

/// Per-anchor, per-step user powers |g_u|^2 (step 0 = initial config),
/// recorded for consistency checks.
struct MulticastTrace {
  std::vector<SweepSchedule> schedules;
  std::vector<std::vector<int>> initial_configs;
  std::vector<std::vector<std::vector<double>>> user_powers;  // [anchor][step][user]
};

/// Anchored sweep extension of the N-step solver: for every anchor user,
/// run that user's schedule while scoring each step by the minimum SNR over
/// all users, then keep the best anchor. U*N single-element updates total;
/// a strong heuristic, not a proven max-min optimum.
MulticastResult multicast_solve(const MulticastInstance& inst, int k_levels,
                                double tx_power_dbm, MulticastTrace* trace = nullptr);

/// Baseline: UPQ from one reference user's channel, scored on all users.
MulticastResult multicast_upq(const MulticastInstance& inst, int k_levels,
                              double tx_power_dbm, int reference_user = 0);

/// Exhaustive max-min over all K^N configurations (desk-scale gap probe).
MulticastResult multicast_exhaustive(const MulticastInstance& inst, int k_levels,
                                     double tx_power_dbm, uint64_t budget = kDefaultOracleBudget);

}  // namespace risopt

#endif  // RISOPT_MULTICAST_HPP
