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

#ifndef RISOPT_PHASE_HPP
#define RISOPT_PHASE_HPP

#include <complex>
#include <span>
#include <vector>

namespace risopt {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Reduce an angle to the canonical interval [0, 2*pi).
double canonical_angle(double x);

/// Reduce x to [0, period). period must be positive.
double canonical_mod(double x, double period);

/// K-level phase lattice {0, w, 2w, ..., (K-1)w} with w = 2*pi/K.
/// Carries a precomputed unit-root table e^{j*k*w}; the sweep loops index
/// it once per visited element.
class PhaseResolution {
 public:
  explicit PhaseResolution(int k_levels);

  int k_levels() const { return k_; }
  double omega() const { return omega_; }

  /// e^{j*k*omega}, k in [0, K).
  cplx root(int k) const { return roots_[static_cast<size_t>(k)]; }
  std::span<const cplx> roots() const { return roots_; }

 private:
  int k_;
  double omega_;
  std::vector<cplx> roots_;
};

/// Phase configuration stored as integer lattice indices, never as floating
/// radians, so mod-K arithmetic is exact. Radians exist only inside the
/// complex exponentials of the root table.
struct PhaseConfig {
  PhaseResolution resolution;
  std::vector<int> indices;  // each in [0, K)

  PhaseConfig(PhaseResolution res, std::vector<int> k);
  static PhaseConfig zeros(int k_levels, int n);

  int size() const { return static_cast<int>(indices.size()); }
  double theta(int n) const { return resolution.omega() * indices[static_cast<size_t>(n)]; }
};

/// Increment or decrement one element's phase index, wrapping mod K.
/// delta is typically +1 or -1. Out-of-range n throws std::out_of_range.
PhaseConfig phase_step(const PhaseConfig& config, int n, int delta);

/// Direct link h0 plus cascaded per-element coefficients h_n, with the
/// polar forms beta_n = |h_n| and alpha_n = angle(h_n) canonicalized to
/// [0, 2*pi) once at construction.
class ChannelInstance {
 public:
  ChannelInstance(cplx h0, std::vector<cplx> h);

  int size() const { return static_cast<int>(h_.size()); }
  cplx h0() const { return h0_; }
  const std::vector<cplx>& h() const { return h_; }
  cplx h(int n) const { return h_[static_cast<size_t>(n)]; }

  double beta0() const { return beta0_; }
  double alpha0() const { return alpha0_; }
  double beta(int n) const { return beta_[static_cast<size_t>(n)]; }
  double alpha(int n) const { return alpha_[static_cast<size_t>(n)]; }
  const std::vector<double>& betas() const { return beta_; }
  const std::vector<double>& alphas() const { return alpha_; }

  bool direct_blocked() const { return beta0_ == 0.0; }

 private:
  cplx h0_;
  std::vector<cplx> h_;
  double beta0_, alpha0_;
  std::vector<double> beta_, alpha_;
};

/// Running total g = h0 + sum_n h_n e^{j theta_n} and its cascade-only part
/// gc = g - h0. Single-writer; all other types here are immutable values.
struct GainAccumulator {
  cplx g{0.0, 0.0};
  cplx gc{0.0, 0.0};

  double power() const { return std::norm(g); }       // |g|^2
  double magnitude() const { return std::abs(g); }
  double mu_phase() const { return std::arg(g); }      // angle of g/|g|
};

/// Full O(N) evaluation of g for a configuration. Throws on length mismatch.
GainAccumulator evaluate_gain(const ChannelInstance& ch, const PhaseConfig& config);

/// O(1) update after element n moved from phase index old_k to new_k:
/// g += h_n (e^{j new_k w} - e^{j old_k w}).
GainAccumulator incremental_update(GainAccumulator acc, const ChannelInstance& ch,
                                   const PhaseResolution& res, int n, int old_k, int new_k);

}  // namespace risopt

#endif  // RISOPT_PHASE_HPP
