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

#ifndef RISOPT_METRICS_HPP
#define RISOPT_METRICS_HPP

#include <string>
#include <utility>
#include <vector>

#include "risopt/phase.hpp"

namespace risopt {

/// Achievable rate log2(1 + (P/sigma^2) |g|^2) in bps/Hz for one
/// realization; averaging over trials gives the ergodic value.
double rate_bps_hz(double objective_power, double tx_power_dbm, double noise_power_dbm);

/// |g|^2 normalized by the coherent upper bound (sum of all beta_n,
/// direct link included)^2. Lies in [0, 1], 1 iff fully phase-aligned.
double normalized_power(const ChannelInstance& ch, const PhaseConfig& config);

/// sin(pi x)/(pi x), the normalized convention.
double normalized_sinc(double x);

/// Asymptotic ratio of UPQ received power to the continuous-phase bound:
/// E_inf(K) = sinc^2(1/K). E_inf(2) = (2/pi)^2 = 0.4053.
double upq_efficiency(int k_levels);

/// 10 log10(E_inf(K) / E_inf(2)): the dB gain of K levels over binary.
double efficiency_gain_db(int k_levels);

/// Order statistics over a Monte-Carlo sample: empirical CDF, mean, and
/// linearly interpolated percentiles (type-7 convention).
class Aggregate {
 public:
  explicit Aggregate(std::vector<double> samples);

  size_t count() const { return sorted_.size(); }
  double mean() const { return mean_; }
  const std::vector<double>& sorted() const { return sorted_; }

  /// p in [0, 100]; linear interpolation between order statistics.
  double percentile(double p) const;

  /// (value, cumulative probability) pairs, probability i/n at the i-th
  /// order statistic.
  std::vector<std::pair<double, double>> cdf() const;

 private:
  std::vector<double> sorted_;
  double mean_;
};

/// One Monte-Carlo trial of one solver.
struct TrialRecord {
  int trial = 0;
  std::string solver;
  int n = 0;
  int k = 0;
  double kappa = 0.0;
  double objective = 0.0;         // |g|^2
  double snr_boost = 0.0;         // f = |g|^2 / beta0^2; NaN when blocked
  double rate = 0.0;              // bps/Hz
  double norm_power = 0.0;        // in [0, 1]
  int steps_executed = 0;
  int best_step = 0;
  double elapsed_seconds = 0.0;
};

}  // namespace risopt

#endif  // RISOPT_METRICS_HPP
