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

#include "risopt/solvers.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

namespace risopt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double snr_boost_of(const ChannelInstance& ch, double power) {
  const double b0 = ch.beta0();
  return b0 > 0.0 ? power / (b0 * b0) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

double wrap_pm_pi(double x) {
  double y = canonical_angle(x);
  if (y > kTwoPi / 2.0) y -= kTwoPi;
  return y;
}

namespace {

// Shared core of the lemma: nearest lattice index with an explicit
// boundary-tie policy. The continuous optimum is theta = mu - alpha
// (mod 2pi); the discrete optimum is its nearest lattice point, switching
// halfway between neighbors.
enum class TiePolicy { SmallerIndex, AfterArc };

int nearest_phase_index(double alpha_n, double mu_phase, int k_levels, TiePolicy ties) {
  const double omega = kTwoPi / k_levels;
  const double q = canonical_angle(mu_phase - alpha_n) / omega;  // in [0, K)
  int k_lo = static_cast<int>(q);
  if (k_lo >= k_levels) k_lo = k_levels - 1;
  const double off = (q - k_lo - 0.5) * omega;  // radians past the midpoint
  if (off < -kTieTolerance) return k_lo;
  if (off > kTieTolerance) return (k_lo + 1) % k_levels;
  if (ties == TiePolicy::AfterArc) return (k_lo + 1) % k_levels;
  return std::min(k_lo, (k_lo + 1) % k_levels);
}

// Sweep initialization: mu0 exactly on a breakpoint must resolve to the arc
// that begins there, for every tied element alike, so the visit order below
// stays consistent with the initial configuration.
int init_select(double alpha_n, double mu0, int k_levels) {
  return nearest_phase_index(alpha_n, mu0, k_levels, TiePolicy::AfterArc);
}

}  // namespace

int lemma_select(double alpha_n, double mu_phase, int k_levels) {
  if (k_levels < 2) throw std::invalid_argument("lemma_select: K must be >= 2");
  return nearest_phase_index(alpha_n, mu_phase, k_levels, TiePolicy::SmallerIndex);
}

PhaseConfig lemma_config(const ChannelInstance& ch, double mu_phase, int k_levels) {
  std::vector<int> k(static_cast<size_t>(ch.size()));
  for (int n = 0; n < ch.size(); ++n)
    k[static_cast<size_t>(n)] = lemma_select(ch.alpha(n), mu_phase, k_levels);
  return PhaseConfig(PhaseResolution(k_levels), std::move(k));
}

PhaseConfig sweep_initial_config(const ChannelInstance& ch, double mu0, int k_levels) {
  if (k_levels < 2) throw std::invalid_argument("sweep_initial_config: K must be >= 2");
  std::vector<int> k(static_cast<size_t>(ch.size()));
  for (int n = 0; n < ch.size(); ++n)
    k[static_cast<size_t>(n)] = init_select(ch.alpha(n), mu0, k_levels);
  return PhaseConfig(PhaseResolution(k_levels), std::move(k));
}

std::vector<Breakpoint> enumerate_breakpoints(const ChannelInstance& ch, int k_levels) {
  if (k_levels < 2) throw std::invalid_argument("enumerate_breakpoints: K must be >= 2");
  const int n = ch.size();
  const double omega = kTwoPi / k_levels;

  struct Entry {
    double lambda;
    int element;
    int k_before;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<size_t>(n) * static_cast<size_t>(k_levels));
  for (int e = 0; e < n; ++e)
    for (int k = 1; k <= k_levels; ++k)
      entries.push_back({canonical_angle(ch.alpha(e) + (k - 0.5) * omega), e, k - 1});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.element < b.element;
  });

  std::vector<Breakpoint> bps;
  double prev_lambda = 0.0;
  for (const Entry& e : entries) {
    if (!bps.empty() && e.lambda - prev_lambda < kTieTolerance) {
      bps.back().members.push_back(e.element);
      bps.back().k_before.push_back(e.k_before);
    } else {
      bps.push_back(Breakpoint{e.lambda, {e.element}, {e.k_before}});
    }
    prev_lambda = e.lambda;
  }
  // The circle has no seam: an angle just below 2pi equals one just above 0.
  if (bps.size() >= 2 && bps.front().lambda + kTwoPi - entries.back().lambda < kTieTolerance) {
    Breakpoint& first = bps.front();
    const Breakpoint& last = bps.back();
    first.members.insert(first.members.end(), last.members.begin(), last.members.end());
    first.k_before.insert(first.k_before.end(), last.k_before.begin(), last.k_before.end());
    bps.pop_back();
  }
  return bps;
}

SweepSchedule build_schedule_at_mu(const ChannelInstance& ch, int k_levels, double mu0,
                                   bool shorten_last) {
  if (k_levels < 2) throw std::invalid_argument("build_schedule: K must be >= 2");
  const int n = ch.size();
  if (n < 1) throw std::invalid_argument("build_schedule: channel must have N >= 1");
  const double period = kTwoPi / k_levels;

  std::vector<std::pair<double, int>> keyed(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e)
    keyed[static_cast<size_t>(e)] = {canonical_mod(ch.alpha(e) - mu0 + 0.5 * period, period), e};
  std::sort(keyed.begin(), keyed.end());

  SweepSchedule s;
  s.mu0 = mu0;
  double prev_key = 0.0;
  for (const auto& [key, e] : keyed) {
    if (!s.order.empty() && key - prev_key < kTieTolerance) {
      s.order.back().push_back(e);
    } else {
      s.order.push_back({e});
      s.phi.push_back(key);
    }
    prev_key = key;
  }
  // Merge a group hugging the period boundary with the group at zero.
  if (s.order.size() >= 2 && s.phi.front() + period - keyed.back().first < kTieTolerance) {
    auto& first = s.order.front();
    first.insert(first.end(), s.order.back().begin(), s.order.back().end());
    std::sort(first.begin(), first.end());
    s.order.pop_back();
    s.phi.pop_back();
  }
  // Key zero means a breakpoint exactly at mu0. Initialization already
  // places those elements past it, so their next crossing is a full period
  // ahead: visit that group last.
  if (s.order.size() >= 2 && s.phi.front() < kTieTolerance) {
    std::rotate(s.order.begin(), s.order.begin() + 1, s.order.end());
    std::rotate(s.phi.begin(), s.phi.begin() + 1, s.phi.end());
  }
  s.steps = static_cast<int>(s.order.size()) - (shorten_last ? 1 : 0);
  return s;
}

SweepSchedule build_schedule(const ChannelInstance& ch, int k_levels) {
  const bool blocked = ch.direct_blocked();
  const double mu0 =
      blocked ? 0.0 : canonical_angle(ch.alpha0() - kTwoPi / (2.0 * k_levels));
  return build_schedule_at_mu(ch, k_levels, mu0, blocked);
}

namespace {

// Shared engine of the N-step and grouped sweeps: lemma initialization at
// schedule.mu0, one incremental unit update per step, best-step reconstruction.
SolveResult sweep_solve(const ChannelInstance& ch, int k_levels, const SweepSchedule& s) {
  const auto t0 = Clock::now();
  const PhaseResolution res(k_levels);
  const int n = ch.size();

  std::vector<int> init(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) init[static_cast<size_t>(e)] = init_select(ch.alpha(e), s.mu0, k_levels);

  GainAccumulator acc = evaluate_gain(ch, PhaseConfig(res, init));
  double best_power = acc.power();
  int best_step = 0;
  int updates = 0;

  std::vector<int> work = init;
  for (int l = 1; l <= s.steps; ++l) {
    for (int e : s.order[static_cast<size_t>(l - 1)]) {
      const int old_k = work[static_cast<size_t>(e)];
      const int new_k = old_k + 1 == k_levels ? 0 : old_k + 1;
      acc = incremental_update(acc, ch, res, e, old_k, new_k);
      work[static_cast<size_t>(e)] = new_k;
      ++updates;
    }
    const double p = acc.power();
    if (p > best_power) {
      best_power = p;
      best_step = l;
    }
  }

  // The printed algorithm stores only the just-updated element at improving
  // steps; replaying the first l* visit units onto the initial configuration
  // is the O(N) equivalent of storing the full argmax configuration.
  std::vector<int> out = init;
  for (int l = 1; l <= best_step; ++l)
    for (int e : s.order[static_cast<size_t>(l - 1)]) {
      int& k = out[static_cast<size_t>(e)];
      k = k + 1 == k_levels ? 0 : k + 1;
    }

  SolveResult r{PhaseConfig(res, std::move(out)),
                best_power,
                snr_boost_of(ch, best_power),
                s.steps,
                best_step,
                updates,
                0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

SolveResult algorithm1_impl(const ChannelInstance& ch, int k_levels, SweepTrace* trace) {
  const auto t0 = Clock::now();
  const PhaseResolution res(k_levels);
  const int n = ch.size();
  if (n < 1) throw std::invalid_argument("algorithm1: channel must have N >= 1");

  std::vector<Breakpoint> bps = enumerate_breakpoints(ch, k_levels);
  // A breakpoint exactly at angle(mu) = 0 is consumed by the after-arc
  // initialization; its next crossing lies a full turn ahead.
  if (bps.size() >= 2 && bps.front().lambda < kTieTolerance)
    std::rotate(bps.begin(), bps.begin() + 1, bps.end());
  const int arcs = static_cast<int>(bps.size());

  std::vector<int> init(static_cast<size_t>(n));
  for (int e = 0; e < n; ++e) init[static_cast<size_t>(e)] = init_select(ch.alpha(e), 0.0, k_levels);

  GainAccumulator acc = evaluate_gain(ch, PhaseConfig(res, init));
  double best_power = acc.power();
  int best_step = 0;
  int updates = 0;

  if (trace) {
    trace->breakpoints = bps;
    trace->g_magnitudes = {acc.magnitude()};
    trace->gc_magnitudes = {std::abs(acc.gc)};
  }

  std::vector<int> work = init;
  auto cross = [&](const Breakpoint& bp) {
    for (int e : bp.members) {
      const int old_k = work[static_cast<size_t>(e)];
      const int new_k = old_k + 1 == k_levels ? 0 : old_k + 1;
      acc = incremental_update(acc, ch, res, e, old_k, new_k);
      work[static_cast<size_t>(e)] = new_k;
      ++updates;
    }
  };

  // The arc entered by the final crossing is the initial one again, so
  // arcs - 1 crossings enumerate every distinct configuration.
  for (int l = 1; l <= arcs - 1; ++l) {
    cross(bps[static_cast<size_t>(l - 1)]);
    const double p = acc.power();
    if (p > best_power) {
      best_power = p;
      best_step = l;
    }
    if (trace) {
      trace->g_magnitudes.push_back(acc.magnitude());
      trace->gc_magnitudes.push_back(std::abs(acc.gc));
    }
  }
  if (trace && arcs >= 1) {
    cross(bps[static_cast<size_t>(arcs - 1)]);  // close the cycle for the record
    trace->g_magnitudes.push_back(acc.magnitude());
    trace->gc_magnitudes.push_back(std::abs(acc.gc));
  }

  std::vector<int> out = init;
  for (int l = 1; l <= best_step; ++l)
    for (int e : bps[static_cast<size_t>(l - 1)].members) {
      int& k = out[static_cast<size_t>(e)];
      k = k + 1 == k_levels ? 0 : k + 1;
    }

  SolveResult r{PhaseConfig(res, std::move(out)),
                best_power,
                snr_boost_of(ch, best_power),
                arcs - 1,
                best_step,
                updates,
                0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

}  // namespace

SolveResult algorithm1(const ChannelInstance& ch, int k_levels) {
  return algorithm1_impl(ch, k_levels, nullptr);
}

SolveResult algorithm1_traced(const ChannelInstance& ch, int k_levels, SweepTrace* trace) {
  return algorithm1_impl(ch, k_levels, trace);
}

SolveResult algorithm2(const ChannelInstance& ch, int k_levels) {
  const SweepSchedule s = build_schedule(ch, k_levels);
  for (const auto& unit : s.order)
    if (unit.size() > 1)
      throw DuplicatePhaseError(
          "algorithm2: duplicate phase keys within tolerance; use the grouped solver "
          "(algorithm3)");
  return sweep_solve(ch, k_levels, s);
}

SolveResult algorithm3(const ChannelInstance& ch, int k_levels) {
  return sweep_solve(ch, k_levels, build_schedule(ch, k_levels));
}

namespace {

int upq_round_index(double ratio, int k_levels) {
  // round half away from zero: sgn(x) * floor(|x| + 0.5)
  const double r = std::copysign(std::floor(std::abs(ratio) + 0.5), ratio);
  const long long ri = static_cast<long long>(r);
  return static_cast<int>(((ri % k_levels) + k_levels) % k_levels);
}

}  // namespace

PhaseConfig upq(const ChannelInstance& ch, int k_levels, std::optional<double> reference_phase) {
  const double ref = ch.beta0() > 0.0 ? ch.alpha0() : reference_phase.value_or(0.0);
  return upq_at_mu(ch, ref, k_levels);
}

PhaseConfig upq_at_mu(const ChannelInstance& ch, double mu_phase, int k_levels) {
  const PhaseResolution res(k_levels);
  const double omega = res.omega();
  std::vector<int> k(static_cast<size_t>(ch.size()));
  for (int n = 0; n < ch.size(); ++n)
    k[static_cast<size_t>(n)] = upq_round_index((mu_phase - ch.alpha(n)) / omega, k_levels);
  return PhaseConfig(res, std::move(k));
}

SolveResult upq_result(const ChannelInstance& ch, int k_levels) {
  const auto t0 = Clock::now();
  PhaseConfig cfg = upq(ch, k_levels);
  const double elapsed = seconds_since(t0);
  const double power = evaluate_gain(ch, cfg).power();
  return SolveResult{std::move(cfg), power, snr_boost_of(ch, power), 0, 0, 0, elapsed};
}

namespace {

// Enumeration kernel. Digits are lexicographic (last digit fastest). The
// last two digits are folded into one precomputed table of K^2 offsets t_i:
// |g + t_i|^2 = |g|^2 + (|t_i|^2 + 2 Re(conj(g) t_i)), so per prefix only
// the parenthesized score varies. Strict > keeps the lexicographically
// smallest maximizer; the argmax rescan happens only on improvements.
template <int KC>
SolveResult exhaustive_impl(const ChannelInstance& ch, int k_levels, bool fix_first) {
  const auto t0 = Clock::now();
  const int kc = KC > 0 ? KC : k_levels;
  const int n = ch.size();
  const PhaseResolution res(k_levels);

  double best_m = -std::numeric_limits<double>::infinity();
  std::vector<int> best_ks(static_cast<size_t>(n), 0);
  int64_t evaluated = 0;

  if (n == 1) {
    for (int k = 0; k < kc; ++k) {
      const double m = std::norm(ch.h0() + ch.h(0) * res.root(k));
      if (m > best_m) {
        best_m = m;
        best_ks[0] = k;
      }
    }
    evaluated = kc;
  } else {
    const int last = n - 1;
    const int second = n - 2;
    const int pair_count = kc * kc;
    std::vector<double> cc(static_cast<size_t>(pair_count)), tre(static_cast<size_t>(pair_count)),
        tim(static_cast<size_t>(pair_count)), score(static_cast<size_t>(pair_count));
    for (int a = 0; a < kc; ++a)
      for (int b = 0; b < kc; ++b) {
        const cplx t = ch.h(second) * res.root(a) + ch.h(last) * res.root(b);
        const size_t i = static_cast<size_t>(a * kc + b);
        cc[i] = std::norm(t);
        tre[i] = t.real();
        tim[i] = t.imag();
      }
    const double* cc_p = cc.data();
    const double* tre_p = tre.data();
    const double* tim_p = tim.data();
    double* score_p = score.data();

    std::vector<int> ks(static_cast<size_t>(n), 0);
    std::vector<cplx> pre(static_cast<size_t>(n));
    pre[0] = ch.h0();
    for (int d = 0; d < second; ++d)
      pre[static_cast<size_t>(d + 1)] = pre[static_cast<size_t>(d)] + ch.h(d) * res.root(0);

    const int start = (fix_first && n >= 3) ? 1 : 0;
    for (;;) {
      const double gr = pre[static_cast<size_t>(second)].real();
      const double gi = pre[static_cast<size_t>(second)].imag();
      double local = -std::numeric_limits<double>::infinity();
#pragma omp simd reduction(max : local)
      for (int i = 0; i < pair_count; ++i) {
        const double s = cc_p[i] + 2.0 * (gr * tre_p[i] + gi * tim_p[i]);
        score_p[i] = s;
        local = s > local ? s : local;
      }
      const double m = gr * gr + gi * gi + local;
      if (m > best_m) {
        best_m = m;
        int bi = 0;
        while (score_p[bi] != local) ++bi;
        best_ks.assign(ks.begin(), ks.end());
        best_ks[static_cast<size_t>(second)] = bi / kc;
        best_ks[static_cast<size_t>(last)] = bi % kc;
      }
      evaluated += pair_count;

      int d = second - 1;
      while (d >= start && ks[static_cast<size_t>(d)] == kc - 1) {
        ks[static_cast<size_t>(d)] = 0;
        --d;
      }
      if (d < start) break;
      ++ks[static_cast<size_t>(d)];
      for (int i = d; i < second; ++i)
        pre[static_cast<size_t>(i + 1)] =
            pre[static_cast<size_t>(i)] + ch.h(i) * res.root(ks[static_cast<size_t>(i)]);
    }
  }

  PhaseConfig cfg(res, std::move(best_ks));
  const double power = evaluate_gain(ch, cfg).power();
  SolveResult r{std::move(cfg),
                power,
                snr_boost_of(ch, power),
                static_cast<int>(std::min<int64_t>(evaluated, std::numeric_limits<int>::max())),
                -1,
                0,
                0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

}  // namespace

SolveResult exhaustive_oracle(const ChannelInstance& ch, int k_levels, uint64_t budget) {
  if (k_levels < 2) throw std::invalid_argument("exhaustive_oracle: K must be >= 2");
  const int n = ch.size();
  if (n < 1) throw std::invalid_argument("exhaustive_oracle: channel must have N >= 1");

  const uint64_t k_u = static_cast<uint64_t>(k_levels);
  uint64_t total = 1;
  bool overflow = false;
  for (int i = 0; i < n; ++i) {
    if (total > std::numeric_limits<uint64_t>::max() / k_u) {
      overflow = true;
      break;
    }
    total *= k_u;
  }
  if (overflow || total > budget)
    throw OracleBudgetError("exhaustive_oracle: K^N = " +
                            (overflow ? std::string("overflow") : std::to_string(total)) +
                            " evaluations exceeds budget " + std::to_string(budget));

  // With no direct term the objective is invariant under a global phase
  // rotation, so the lexicographically smallest maximizer has k_0 = 0 and
  // the first digit can be pinned there.
  const bool fix_first = ch.h0() == cplx{0.0, 0.0} && n >= 2;
  switch (k_levels) {
    case 2: return exhaustive_impl<2>(ch, k_levels, fix_first);
    case 3: return exhaustive_impl<3>(ch, k_levels, fix_first);
    case 4: return exhaustive_impl<4>(ch, k_levels, fix_first);
    case 8: return exhaustive_impl<8>(ch, k_levels, fix_first);
    default: return exhaustive_impl<0>(ch, k_levels, fix_first);
  }
}

SolveResult candidate_enum_oracle(const ChannelInstance& ch, int k_levels) {
  const auto t0 = Clock::now();
  const PhaseResolution res(k_levels);
  const int n = ch.size();
  if (n < 1) throw std::invalid_argument("candidate_enum_oracle: channel must have N >= 1");

  const std::vector<Breakpoint> bps = enumerate_breakpoints(ch, k_levels);
  double best = -1.0;
  std::vector<int> best_ks;
  std::vector<int> ks(static_cast<size_t>(n));

  for (const Breakpoint& bp : bps) {
    for (int e = 0; e < n; ++e) ks[static_cast<size_t>(e)] = lemma_select(ch.alpha(e), bp.lambda, k_levels);
    // Elements flipping at this breakpoint take their preceding-arc phase.
    for (size_t i = 0; i < bp.members.size(); ++i)
      ks[static_cast<size_t>(bp.members[i])] = bp.k_before[i];
    cplx g = ch.h0();
    for (int e = 0; e < n; ++e) g += ch.h(e) * res.root(ks[static_cast<size_t>(e)]);
    const double p = std::norm(g);
    if (p > best) {
      best = p;
      best_ks = ks;
    }
  }

  SolveResult r{PhaseConfig(res, std::move(best_ks)),
                best,
                snr_boost_of(ch, best),
                static_cast<int>(bps.size()),
                -1,
                0,
                0.0};
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

bool verify_certificate(const ChannelInstance& ch, const PhaseConfig& config) {
  const GainAccumulator acc = evaluate_gain(ch, config);
  if (acc.power() == 0.0) return true;  // direction undefined, condition vacuous
  const double mu = acc.mu_phase();
  const double omega = config.resolution.omega();
  const double bound = 0.5 * omega + kTieTolerance;
  for (int e = 0; e < ch.size(); ++e) {
    const double delta = wrap_pm_pi(config.theta(e) + ch.alpha(e) - mu);
    if (std::abs(delta) > bound) return false;
  }
  return true;
}

}  // namespace risopt
