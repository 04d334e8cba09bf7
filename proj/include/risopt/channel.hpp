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

#ifndef RISOPT_CHANNEL_HPP
#define RISOPT_CHANNEL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "risopt/phase.hpp"
#include "risopt/rng.hpp"

namespace risopt {

using Vec3 = std::array<double, 3>;

double distance(const Vec3& a, const Vec3& b);

/// Uniform planar array in the y-z plane: N_y columns, N_z rows,
/// element spacings given as fractions of the carrier wavelength.
struct RisGeometry {
  int n_y = 1;
  int n_z = 1;
  double d_y = 0.5;  // in wavelengths, <= 0.5
  double d_z = 0.5;

  int size() const { return n_y * n_z; }
  void validate() const;

  /// Near-square factorization N = n_y * n_z used by the experiment
  /// harness when only N is given.
  static RisGeometry for_elements(int n);
};

/// Deployment geometry and link-budget constants. Defaults reproduce the
/// reference deployment: RIS (-2,-1,0), BS (50,-200,20), UE (0,0,0),
/// 30 dBm transmit power, -90 dBm noise.
struct ScenarioConfig {
  Vec3 ris_position{-2.0, -1.0, 0.0};
  Vec3 bs_position{50.0, -200.0, 20.0};
  Vec3 ue_position{0.0, 0.0, 0.0};
  double kappa = 0.0;            // Rician factor, >= 0
  double tx_power_dbm = 30.0;
  double noise_power_dbm = -90.0;
  bool direct_link_blocked = false;
  uint64_t seed = 0;

  void validate() const;
};

/// Rician factors at or above this value bypass the NLOS draw entirely
/// (pure line-of-sight limit).
inline constexpr double kKappaInfinity = 1e12;

enum class RisLink { BsToRis, RisToUe };

struct AnglePair {
  double elevation;  // measured from +z
  double azimuth;    // atan2(y, x)
};

/// UPA array response a(elevation, azimuth) = a_y kron a_z, elements
/// ordered column-wise (z-index varies fastest). All entries unit modulus.
std::vector<cplx> array_response(const RisGeometry& geom, double elevation, double azimuth);

/// Spherical angles of the BS (or UE) as seen from the RIS:
/// elevation = arccos(z/r), azimuth = atan2(y, x) of the unit displacement.
/// Throws std::domain_error on zero displacement.
AnglePair aoa_from_geometry(const ScenarioConfig& scenario, RisLink link);

double link_distance(const ScenarioConfig& scenario, RisLink link);
double direct_distance(const ScenarioConfig& scenario);

/// RIS-link path loss in dB: 30 + 22 log10(d).
double ris_path_loss_db(double distance_m);

/// Direct BS-UE path loss in dB: 32.6 + 36.7 log10(d).
double direct_path_loss_db(double distance_m);

/// One Rician fade of a BS-RIS or RIS-UE link. The LOS part is the steering
/// vector at the link AoA, the NLOS part is i.i.d. CN(0,1), and the path
/// loss enters as the linear amplitude 10^(-PL/20).
std::vector<cplx> rician_channel(const RisGeometry& geom, const ScenarioConfig& scenario,
                                 RisLink link, RngStream& rng);

/// Direct BS-UE coefficient: 0 when blocked, else 10^(-PL0/20) * CN(0,1).
cplx direct_link(const ScenarioConfig& scenario, RngStream& rng);

/// Elementwise conj(h_u) * h_b.
std::vector<cplx> cascade(std::span<const cplx> h_u, std::span<const cplx> h_b);

// Stream-splitting layout for reproducible parallel trials: one RngStream
// per (trial, draw, user).
enum class ChannelDraw : uint64_t { BsRisNlos = 0, RisUeNlos = 1, Direct = 2 };

uint64_t channel_stream(uint64_t trial, ChannelDraw draw, uint64_t user = 0);

/// Draw the full cascaded instance for one trial: h_n = conj(h_u,n) * h_b,n
/// and the direct h0, each from its own (seed, trial, user) stream.
ChannelInstance sample_channel(const RisGeometry& geom, const ScenarioConfig& scenario,
                               uint64_t trial, uint64_t user = 0);

/// MISO instance: BS-side steering matrix C (N x M, column-major), transmit
/// beamformer x, and the conjugate-transposed UE-side steering row b.
/// The per-antenna BS angles are taken as direct input.
struct MisoInstance {
  int n = 0;
  int m = 0;
  std::vector<cplx> c;  // column-major N x M
  std::vector<cplx> x;  // length M
  std::vector<cplx> b;  // length N

  static MisoInstance from_angles(const RisGeometry& geom,
                                  const std::vector<AnglePair>& bs_angles,
                                  const AnglePair& ue_angle, std::vector<cplx> beamformer);
  void validate() const;
};

/// Rank-one reduction of the MISO received power: with u = C x, the
/// equivalent SISO cascade is h_n = u_n * b_n and h0 = 0, so that
/// w^H (P^T hadamard R) w = |sum_n h_n e^{j theta_n}|^2.
ChannelInstance miso_reduce(const MisoInstance& miso);

/// Fold the direct link into an (N+1)-element instance [h_1..h_N, h0] with
/// zero direct term; solving it and extracting recovers the original optimum.
ChannelInstance p2_augment(const ChannelInstance& ch);

/// Undo p2_augment on a solved configuration: k_n <- (k_n - k_{N+1}) mod K.
PhaseConfig p2_extract(const PhaseConfig& augmented);

}  // namespace risopt

#endif  // RISOPT_CHANNEL_HPP
