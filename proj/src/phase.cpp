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

#include "risopt/phase.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risopt {

double canonical_angle(double x) { return canonical_mod(x, kTwoPi); }

double canonical_mod(double x, double period) {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  if (y >= period) y = 0.0;  // fmod of a tiny negative can round up to the period
  return y;
}

PhaseResolution::PhaseResolution(int k_levels) : k_(k_levels) {
  if (k_ < 2) throw std::invalid_argument("PhaseResolution: K must be >= 2");
  omega_ = kTwoPi / k_;
  roots_.resize(static_cast<size_t>(k_));
  for (int k = 0; k < k_; ++k)
    roots_[static_cast<size_t>(k)] = std::polar(1.0, omega_ * k);
}

PhaseConfig::PhaseConfig(PhaseResolution res, std::vector<int> k)
    : resolution(std::move(res)), indices(std::move(k)) {
  for (int v : indices)
    if (v < 0 || v >= resolution.k_levels())
      throw std::invalid_argument("PhaseConfig: index out of [0, K)");
}

PhaseConfig PhaseConfig::zeros(int k_levels, int n) {
  return PhaseConfig(PhaseResolution(k_levels), std::vector<int>(static_cast<size_t>(n), 0));
}

PhaseConfig phase_step(const PhaseConfig& config, int n, int delta) {
  if (n < 0 || n >= config.size())
    throw std::out_of_range("phase_step: element index " + std::to_string(n) +
                            " out of range for N=" + std::to_string(config.size()));
  PhaseConfig out = config;
  const int k_levels = config.resolution.k_levels();
  int k = (out.indices[static_cast<size_t>(n)] + delta) % k_levels;
  if (k < 0) k += k_levels;
  out.indices[static_cast<size_t>(n)] = k;
  return out;
}

ChannelInstance::ChannelInstance(cplx h0, std::vector<cplx> h)
    : h0_(h0), h_(std::move(h)) {
  beta0_ = std::abs(h0_);
  alpha0_ = beta0_ > 0.0 ? canonical_angle(std::arg(h0_)) : 0.0;
  beta_.reserve(h_.size());
  alpha_.reserve(h_.size());
  for (const cplx& c : h_) {
    const double b = std::abs(c);
    beta_.push_back(b);
    alpha_.push_back(b > 0.0 ? canonical_angle(std::arg(c)) : 0.0);
  }
}

GainAccumulator evaluate_gain(const ChannelInstance& ch, const PhaseConfig& config) {
  if (config.size() != ch.size())
    throw std::invalid_argument("evaluate_gain: config length " + std::to_string(config.size()) +
                                " != channel N " + std::to_string(ch.size()));
  cplx gc{0.0, 0.0};
  const auto roots = config.resolution.roots();
  for (int n = 0; n < ch.size(); ++n)
    gc += ch.h(n) * roots[static_cast<size_t>(config.indices[static_cast<size_t>(n)])];
  return GainAccumulator{ch.h0() + gc, gc};
}

GainAccumulator incremental_update(GainAccumulator acc, const ChannelInstance& ch,
                                   const PhaseResolution& res, int n, int old_k, int new_k) {
  if (n < 0 || n >= ch.size())
    throw std::out_of_range("incremental_update: element index out of range");
  const cplx delta = ch.h(n) * (res.root(new_k) - res.root(old_k));
  acc.g += delta;
  acc.gc += delta;
  return acc;
}

}  // namespace risopt
