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

#ifndef RISOPT_SOLVERS_HPP
#define RISOPT_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "risopt/phase.hpp"

namespace risopt {

/// Two phase keys or breakpoint angles closer than this (radians, after mod
/// reduction) are treated as equal. The open-arc boundary itself carries no
/// optimum, so equality within tolerance routes to the grouped solver.
inline constexpr double kTieTolerance = 1e-9;

inline constexpr uint64_t kDefaultOracleBudget = uint64_t{1} << 24;

/// Raised by algorithm2 when phase keys collide within tolerance.
class DuplicatePhaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by exhaustive_oracle when K^N exceeds the evaluation budget.
class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One deduplicated breakpoint e^{j lambda}: the unit-circle point where the
/// optimal phase of each member element flips as the target direction
/// rotates. k_before[i] is members[i]'s phase index on the arc ending at
/// lambda; crossing moves it to k_before[i] + 1 (mod K).
struct Breakpoint {
  double lambda = 0.0;
  std::vector<int> members;
  std::vector<int> k_before;
};

/// All distinct breakpoint angles of the instance, sorted ascending in
/// [0, 2pi), duplicates (within kTieTolerance, including the 0/2pi seam)
/// merged into shared member lists.
std::vector<Breakpoint> enumerate_breakpoints(const ChannelInstance& ch, int k_levels);

/// Elementwise visit plan shared by the N-step and grouped sweeps: units in
/// ascending key order, each a single element or a duplicate group R_m.
struct SweepSchedule {
  std::vector<std::vector<int>> order;  // visit units, members sorted
  std::vector<double> phi;              // unit keys, strictly increasing in [0, 2pi/K)
  int steps = 0;                        // planned loop length (one less when h0 == 0)
  double mu0 = 0.0;                     // initial angle(mu)
};

/// Keys phi_n = (alpha_n - mu0 + pi/K) mod 2pi/K, grouped and sorted.
SweepSchedule build_schedule_at_mu(const ChannelInstance& ch, int k_levels, double mu0,
                                   bool shorten_last);

/// Schedule with the standard initialization: mu0 = alpha0 - pi/K when the
/// direct link is present, else mu0 = 0 with the loop shortened by one.
SweepSchedule build_schedule(const ChannelInstance& ch, int k_levels);

struct SolveResult {
  PhaseConfig config;
  double objective = 0.0;       // |g|^2 at config
  double snr_boost = 0.0;       // |g|^2 / beta0^2; NaN when beta0 == 0
  int steps_executed = 0;
  int best_step = 0;            // improving step index l*; 0 = initial config, -1 = not a sweep
  int phase_updates = 0;        // single-element updates performed
  double elapsed_seconds = 0.0;
};

/// The k in [0, K) maximizing cos(k w + alpha_n - mu_phase); exact
/// breakpoint ties resolve to the numerically smaller index.
int lemma_select(double alpha_n, double mu_phase, int k_levels);

/// Apply lemma_select to every element at a common target direction.
PhaseConfig lemma_config(const ChannelInstance& ch, double mu_phase, int k_levels);

/// Initial configuration of a sweep anchored at mu0: as lemma_config, but a
/// mu0 lying exactly on a breakpoint resolves to the arc that begins there,
/// consistently with the schedule visiting that group last.
PhaseConfig sweep_initial_config(const ChannelInstance& ch, double mu0, int k_levels);

/// Per-step record of the full breakpoint sweep, for the periodicity checks:
/// index l = 0 is the initial configuration, l = 1..L the crossings
/// (the L-th closes the cycle and is recorded but never selected).
struct SweepTrace {
  std::vector<Breakpoint> breakpoints;
  std::vector<double> g_magnitudes;    // |g_l|, l = 0..L
  std::vector<double> gc_magnitudes;   // |g_{c,l}|, l = 0..L
};

/// Full breakpoint sweep: initializes at angle(mu) = 0, crosses every sorted
/// breakpoint arc once with incremental gain updates, returns the arc
/// configuration maximizing |g|. Globally optimal.
SolveResult algorithm1(const ChannelInstance& ch, int k_levels);
SolveResult algorithm1_traced(const ChannelInstance& ch, int k_levels, SweepTrace* trace);

/// N-step elementwise sweep (N-1 steps when the direct link is blocked).
/// Requires all phase keys distinct; throws DuplicatePhaseError otherwise.
/// Globally optimal.
SolveResult algorithm2(const ChannelInstance& ch, int k_levels);

/// Grouped sweep over duplicate classes R_m: M/K = N - N' steps (one fewer
/// when the direct link is blocked), each updating one whole group.
/// Handles the duplicate-free case identically to algorithm2.
SolveResult algorithm3(const ChannelInstance& ch, int k_levels);

/// Uniform polar quantization: k_n = round((alpha0 - alpha_n)/w) per
/// element, rounding half away from zero. With a blocked direct link alpha0
/// is undefined and reference_phase (default 0) takes its place; the choice
/// is immaterial to |g_c| by rotation invariance.
PhaseConfig upq(const ChannelInstance& ch, int k_levels,
                std::optional<double> reference_phase = std::nullopt);

/// Quantize against an arbitrary target direction. Strictly inside an arc
/// this reproduces lemma_select for every element.
PhaseConfig upq_at_mu(const ChannelInstance& ch, double mu_phase, int k_levels);

/// UPQ evaluated and packaged like the sweep solvers.
SolveResult upq_result(const ChannelInstance& ch, int k_levels);

/// Ground truth by enumeration of all K^N configurations; ties resolve to
/// the lexicographically smallest index vector. Refuses when K^N exceeds
/// the budget.
SolveResult exhaustive_oracle(const ChannelInstance& ch, int k_levels,
                              uint64_t budget = kDefaultOracleBudget);

/// Independent O(N^2 K) oracle: tries mu at every unique breakpoint, sets
/// the flipping elements to their preceding-arc phase and everything else by
/// the lemma. Globally optimal; shares nothing with the sweep machinery.
SolveResult candidate_enum_oracle(const ChannelInstance& ch, int k_levels);

/// Lemma fixed-point check at the realized optimum direction angle(g):
/// every element's phase must lie within pi/K (plus tie slack) of it.
bool verify_certificate(const ChannelInstance& ch, const PhaseConfig& config);

/// Map an angle to (-pi, pi].
double wrap_pm_pi(double x);

}  // namespace risopt

#endif  // RISOPT_SOLVERS_HPP
