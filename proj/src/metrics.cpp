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

#include "risopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risopt {

double rate_bps_hz(double objective_power, double tx_power_dbm, double noise_power_dbm) {
  const double snr_scale = std::pow(10.0, (tx_power_dbm - noise_power_dbm) / 10.0);
  return std::log2(1.0 + snr_scale * objective_power);
}

double normalized_power(const ChannelInstance& ch, const PhaseConfig& config) {
  double bound = ch.beta0();
  for (int n = 0; n < ch.size(); ++n) bound += ch.beta(n);
  if (bound <= 0.0) throw std::domain_error("normalized_power: all-zero channel");
  return evaluate_gain(ch, config).power() / (bound * bound);
}

double normalized_sinc(double x) {
  if (x == 0.0) return 1.0;
  const double pix = kTwoPi / 2.0 * x;
  return std::sin(pix) / pix;
}

double upq_efficiency(int k_levels) {
  if (k_levels < 2) throw std::invalid_argument("upq_efficiency: K must be >= 2");
  const double s = normalized_sinc(1.0 / k_levels);
  return s * s;
}

double efficiency_gain_db(int k_levels) {
  if (k_levels < 3) throw std::invalid_argument("efficiency_gain_db: K must be >= 3");
  return 10.0 * std::log10(upq_efficiency(k_levels) / upq_efficiency(2));
}

Aggregate::Aggregate(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::domain_error("Aggregate: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
  mean_ = std::accumulate(sorted_.begin(), sorted_.end(), 0.0) /
          static_cast<double>(sorted_.size());
}

double Aggregate::percentile(double p) const {
  if (p < 0.0 || p > 100.0) throw std::domain_error("Aggregate::percentile: p outside [0, 100]");
  const double h = (static_cast<double>(sorted_.size()) - 1.0) * p / 100.0;
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= sorted_.size()) return sorted_.back();
  const double frac = h - static_cast<double>(lo);
  return sorted_[lo] + frac * (sorted_[lo + 1] - sorted_[lo]);
}

std::vector<std::pair<double, double>> Aggregate::cdf() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(sorted_.size());
  const double inv = 1.0 / static_cast<double>(sorted_.size());
  for (size_t i = 0; i < sorted_.size(); ++i)
    out.emplace_back(sorted_[i], static_cast<double>(i + 1) * inv);
  return out;
}

}  // namespace risopt
