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

#include "risopt/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace risopt {

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void RisGeometry::validate() const {
  if (n_y < 1 || n_z < 1) throw std::invalid_argument("RisGeometry: N_y, N_z must be >= 1");
  if (d_y <= 0.0 || d_y > 0.5 || d_z <= 0.0 || d_z > 0.5)
    throw std::invalid_argument("RisGeometry: spacings must lie in (0, 0.5] wavelengths");
}

RisGeometry RisGeometry::for_elements(int n) {
  if (n < 1) throw std::invalid_argument("RisGeometry: N must be >= 1");
  int rows = static_cast<int>(std::sqrt(static_cast<double>(n)));
  while (rows > 1 && n % rows != 0) --rows;
  RisGeometry geom;
  geom.n_z = rows;
  geom.n_y = n / rows;
  return geom;
}

void ScenarioConfig::validate() const {
  if (kappa < 0.0) throw std::domain_error("ScenarioConfig: kappa must be >= 0");
}

std::vector<cplx> array_response(const RisGeometry& geom, double elevation, double azimuth) {
  geom.validate();
  const double sin_el_sin_az = std::sin(elevation) * std::sin(azimuth);
  const double cos_el = std::cos(elevation);
  std::vector<cplx> a(static_cast<size_t>(geom.size()));
  for (int m = 0; m < geom.n_y; ++m) {
    const cplx ay = std::polar(1.0, -kTwoPi * m * geom.d_y * sin_el_sin_az);
    for (int n = 0; n < geom.n_z; ++n) {
      const cplx az = std::polar(1.0, -kTwoPi * n * geom.d_z * cos_el);
      a[static_cast<size_t>(m * geom.n_z + n)] = ay * az;
    }
  }
  return a;
}

AnglePair aoa_from_geometry(const ScenarioConfig& scenario, RisLink link) {
  const Vec3& other = link == RisLink::BsToRis ? scenario.bs_position : scenario.ue_position;
  const double dx = other[0] - scenario.ris_position[0];
  const double dy = other[1] - scenario.ris_position[1];
  const double dz = other[2] - scenario.ris_position[2];
  const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (r <= 0.0) throw std::domain_error("aoa_from_geometry: zero displacement from RIS");
  return AnglePair{std::acos(dz / r), std::atan2(dy, dx)};
}

double link_distance(const ScenarioConfig& scenario, RisLink link) {
  const Vec3& other = link == RisLink::BsToRis ? scenario.bs_position : scenario.ue_position;
  return distance(other, scenario.ris_position);
}

double direct_distance(const ScenarioConfig& scenario) {
  return distance(scenario.bs_position, scenario.ue_position);
}

double ris_path_loss_db(double distance_m) {
  if (distance_m <= 0.0) throw std::domain_error("ris_path_loss_db: distance must be > 0");
  return 30.0 + 22.0 * std::log10(distance_m);
}

double direct_path_loss_db(double distance_m) {
  if (distance_m <= 0.0) throw std::domain_error("direct_path_loss_db: distance must be > 0");
  return 32.6 + 36.7 * std::log10(distance_m);
}

std::vector<cplx> rician_channel(const RisGeometry& geom, const ScenarioConfig& scenario,
                                 RisLink link, RngStream& rng) {
  scenario.validate();
  const double kappa = scenario.kappa;
  const double amp = std::pow(10.0, -ris_path_loss_db(link_distance(scenario, link)) / 20.0);
  const AnglePair aoa = aoa_from_geometry(scenario, link);
  std::vector<cplx> h = array_response(geom, aoa.elevation, aoa.azimuth);

  if (kappa >= kKappaInfinity) {
    for (cplx& c : h) c *= amp;
    return h;
  }
  const double los_w = amp * std::sqrt(kappa / (1.0 + kappa));
  const double nlos_w = amp * std::sqrt(1.0 / (1.0 + kappa));
  for (cplx& c : h) c = los_w * c + nlos_w * rng.next_cn();
  return h;
}

cplx direct_link(const ScenarioConfig& scenario, RngStream& rng) {
  if (scenario.direct_link_blocked) return {0.0, 0.0};
  const double amp = std::pow(10.0, -direct_path_loss_db(direct_distance(scenario)) / 20.0);
  return amp * rng.next_cn();
}

std::vector<cplx> cascade(std::span<const cplx> h_u, std::span<const cplx> h_b) {
  if (h_u.size() != h_b.size())
    throw std::invalid_argument("cascade: vector lengths differ");
  std::vector<cplx> h(h_u.size());
  for (size_t n = 0; n < h.size(); ++n) h[n] = std::conj(h_u[n]) * h_b[n];
  return h;
}

uint64_t channel_stream(uint64_t trial, ChannelDraw draw, uint64_t user) {
  return (user << 48) | (trial << 2) | static_cast<uint64_t>(draw);
}

ChannelInstance sample_channel(const RisGeometry& geom, const ScenarioConfig& scenario,
                               uint64_t trial, uint64_t user) {
  RngStream rng_b(scenario.seed, channel_stream(trial, ChannelDraw::BsRisNlos, user));
  RngStream rng_u(scenario.seed, channel_stream(trial, ChannelDraw::RisUeNlos, user));
  RngStream rng_0(scenario.seed, channel_stream(trial, ChannelDraw::Direct, user));
  const std::vector<cplx> h_b = rician_channel(geom, scenario, RisLink::BsToRis, rng_b);
  const std::vector<cplx> h_u = rician_channel(geom, scenario, RisLink::RisToUe, rng_u);
  return ChannelInstance(direct_link(scenario, rng_0), cascade(h_u, h_b));
}

MisoInstance MisoInstance::from_angles(const RisGeometry& geom,
                                       const std::vector<AnglePair>& bs_angles,
                                       const AnglePair& ue_angle, std::vector<cplx> beamformer) {
  MisoInstance miso;
  miso.n = geom.size();
  miso.m = static_cast<int>(bs_angles.size());
  miso.x = std::move(beamformer);
  miso.c.reserve(static_cast<size_t>(miso.n) * static_cast<size_t>(miso.m));
  for (const AnglePair& ang : bs_angles) {
    const std::vector<cplx> col = array_response(geom, ang.elevation, ang.azimuth);
    miso.c.insert(miso.c.end(), col.begin(), col.end());
  }
  const std::vector<cplx> a_u = array_response(geom, ue_angle.elevation, ue_angle.azimuth);
  miso.b.resize(a_u.size());
  for (size_t i = 0; i < a_u.size(); ++i) miso.b[i] = std::conj(a_u[i]);
  miso.validate();
  return miso;
}

void MisoInstance::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("MisoInstance: N, M must be >= 1");
  if (c.size() != static_cast<size_t>(n) * static_cast<size_t>(m))
    throw std::invalid_argument("MisoInstance: C must be N x M");
  if (x.size() != static_cast<size_t>(m)) throw std::invalid_argument("MisoInstance: x must have length M");
  if (b.size() != static_cast<size_t>(n)) throw std::invalid_argument("MisoInstance: b must have length N");
}

ChannelInstance miso_reduce(const MisoInstance& miso) {
  miso.validate();
  std::vector<cplx> h(static_cast<size_t>(miso.n), cplx{0.0, 0.0});
  for (int col = 0; col < miso.m; ++col) {
    const cplx xm = miso.x[static_cast<size_t>(col)];
    const cplx* column = miso.c.data() + static_cast<size_t>(col) * static_cast<size_t>(miso.n);
    for (int row = 0; row < miso.n; ++row) h[static_cast<size_t>(row)] += column[row] * xm;
  }
  for (int row = 0; row < miso.n; ++row) h[static_cast<size_t>(row)] *= miso.b[static_cast<size_t>(row)];
  return ChannelInstance(cplx{0.0, 0.0}, std::move(h));
}

ChannelInstance p2_augment(const ChannelInstance& ch) {
  std::vector<cplx> h = ch.h();
  h.push_back(ch.h0());
  return ChannelInstance(cplx{0.0, 0.0}, std::move(h));
}

PhaseConfig p2_extract(const PhaseConfig& augmented) {
  if (augmented.size() < 1)
    throw std::invalid_argument("p2_extract: augmented config must have at least one element");
  const int k_levels = augmented.resolution.k_levels();
  const int pivot = augmented.indices.back();
  std::vector<int> k(augmented.indices.begin(), augmented.indices.end() - 1);
  for (int& v : k) v = ((v - pivot) % k_levels + k_levels) % k_levels;
  return PhaseConfig(augmented.resolution, std::move(k));
}

}  // namespace risopt
