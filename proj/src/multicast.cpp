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

#include "risopt/multicast.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> snr_scales(const MulticastInstance& inst, double tx_power_dbm) {
  std::vector<double> rho(static_cast<size_t>(inst.n_users()));
  for (int u = 0; u < inst.n_users(); ++u) {
    const double noise =
        inst.noise_power_dbm.empty() ? -90.0 : inst.noise_power_dbm[static_cast<size_t>(u)];
    rho[static_cast<size_t>(u)] = std::pow(10.0, (tx_power_dbm - noise) / 10.0);
  }
  return rho;
}

double min_snr_of(const MulticastInstance& inst, const std::vector<double>& rho,
                  const PhaseConfig& cfg) {
  double worst = std::numeric_limits<double>::infinity();
  for (int u = 0; u < inst.n_users(); ++u) {
    const double snr = rho[static_cast<size_t>(u)] *
                       evaluate_gain(inst.users[static_cast<size_t>(u)], cfg).power();
    worst = std::min(worst, snr);
  }
  return worst;
}

}  // namespace

void MulticastInstance::validate() const {
  if (users.empty()) throw std::invalid_argument("MulticastInstance: no users");
  const int n = users.front().size();
  for (const ChannelInstance& u : users)
    if (u.size() != n)
      throw std::invalid_argument("MulticastInstance: users disagree on N");
  if (!noise_power_dbm.empty() && noise_power_dbm.size() != users.size())
    throw std::invalid_argument("MulticastInstance: noise list length != U");
}

MulticastResult multicast_solve(const MulticastInstance& inst, int k_levels,
                                double tx_power_dbm, MulticastTrace* trace) {
  const auto t0 = Clock::now();
  inst.validate();
  const int n_users = inst.n_users();
  const PhaseResolution res(k_levels);
  const std::vector<double> rho = snr_scales(inst, tx_power_dbm);

  double best_score = -1.0;
  std::vector<int> best_config;
  int best_anchor = 0;
  int steps_total = 0;
  int updates_total = 0;

  for (int anchor = 0; anchor < n_users; ++anchor) {
    const ChannelInstance& ach = inst.users[static_cast<size_t>(anchor)];
    const SweepSchedule sched = build_schedule(ach, k_levels);

    std::vector<int> init = sweep_initial_config(ach, sched.mu0, k_levels).indices;

    // Running gain per user, all driven by the anchor's visit order.
    std::vector<GainAccumulator> acc(static_cast<size_t>(n_users));
    const PhaseConfig init_cfg(res, init);
    for (int u = 0; u < n_users; ++u)
      acc[static_cast<size_t>(u)] = evaluate_gain(inst.users[static_cast<size_t>(u)], init_cfg);

    auto score_now = [&]() {
      double worst = std::numeric_limits<double>::infinity();
      for (int u = 0; u < n_users; ++u)
        worst = std::min(worst, rho[static_cast<size_t>(u)] * acc[static_cast<size_t>(u)].power());
      return worst;
    };

    if (trace) {
      trace->schedules.push_back(sched);
      trace->initial_configs.push_back(init);
      trace->user_powers.emplace_back();
      std::vector<double> row(static_cast<size_t>(n_users));
      for (int u = 0; u < n_users; ++u) row[static_cast<size_t>(u)] = acc[static_cast<size_t>(u)].power();
      trace->user_powers.back().push_back(row);
    }

    double anchor_best = score_now();
    int anchor_best_step = 0;

    std::vector<int> work = init;
    for (int l = 1; l <= sched.steps; ++l) {
      for (int e : sched.order[static_cast<size_t>(l - 1)]) {
        const int old_k = work[static_cast<size_t>(e)];
        const int new_k = old_k + 1 == k_levels ? 0 : old_k + 1;
        for (int u = 0; u < n_users; ++u)
          acc[static_cast<size_t>(u)] = incremental_update(
              acc[static_cast<size_t>(u)], inst.users[static_cast<size_t>(u)], res, e, old_k, new_k);
        work[static_cast<size_t>(e)] = new_k;
        ++updates_total;
      }
      const double score = score_now();
      if (score > anchor_best) {
        anchor_best = score;
        anchor_best_step = l;
      }
      if (trace) {
        std::vector<double> row(static_cast<size_t>(n_users));
        for (int u = 0; u < n_users; ++u) row[static_cast<size_t>(u)] = acc[static_cast<size_t>(u)].power();
        trace->user_powers.back().push_back(row);
      }
    }
    steps_total += sched.steps;

    if (anchor_best > best_score) {
      std::vector<int> cfg = init;
      for (int l = 1; l <= anchor_best_step; ++l)
        for (int e : sched.order[static_cast<size_t>(l - 1)]) {
          int& k = cfg[static_cast<size_t>(e)];
          k = k + 1 == k_levels ? 0 : k + 1;
        }
      best_score = anchor_best;
      best_config = std::move(cfg);
      best_anchor = anchor;
    }
  }

  MulticastResult r{PhaseConfig(res, std::move(best_config)), best_score, best_anchor,
                    steps_total, updates_total, 0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

MulticastResult multicast_upq(const MulticastInstance& inst, int k_levels,
                              double tx_power_dbm, int reference_user) {
  const auto t0 = Clock::now();
  inst.validate();
  if (reference_user < 0 || reference_user >= inst.n_users())
    throw std::out_of_range("multicast_upq: reference user out of range");
  const std::vector<double> rho = snr_scales(inst, tx_power_dbm);
  PhaseConfig cfg = upq(inst.users[static_cast<size_t>(reference_user)], k_levels);
  const double score = min_snr_of(inst, rho, cfg);
  MulticastResult r{std::move(cfg), score, reference_user, 0, 0, 0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

MulticastResult multicast_exhaustive(const MulticastInstance& inst, int k_levels,
                                     double tx_power_dbm, uint64_t budget) {
  const auto t0 = Clock::now();
  inst.validate();
  const int n = inst.n_elements();
  const uint64_t k_u = static_cast<uint64_t>(k_levels);
  uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > std::numeric_limits<uint64_t>::max() / k_u)
      throw OracleBudgetError("multicast_exhaustive: K^N overflows");
    total *= k_u;
  }
  if (total > budget)
    throw OracleBudgetError("multicast_exhaustive: K^N = " + std::to_string(total) +
                            " exceeds budget " + std::to_string(budget));

  const PhaseResolution res(k_levels);
  const std::vector<double> rho = snr_scales(inst, tx_power_dbm);
  std::vector<int> ks(static_cast<size_t>(n), 0);
  double best = -1.0;
  std::vector<int> best_ks = ks;
  for (;;) {
    const double score = min_snr_of(inst, rho, PhaseConfig(res, ks));
    if (score > best) {
      best = score;
      best_ks = ks;
    }
    int d = n - 1;
    while (d >= 0 && ks[static_cast<size_t>(d)] == k_levels - 1) {
      ks[static_cast<size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
    ++ks[static_cast<size_t>(d)];
  }

  MulticastResult r{PhaseConfig(res, std::move(best_ks)), best, -1,
                    static_cast<int>(std::min<uint64_t>(total, std::numeric_limits<int>::max())),
                    0, 0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

}  // namespace risopt
