// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/solvers.hpp"
#include "test_util.hpp"

using namespace risopt;
using risopt::test::random_instance;
using risopt::test::rel_close;

TEST_SUITE_BEGIN("channel");

TEST_CASE("array_response at boresight is all ones") {
  RisGeometry geom{3, 2, 0.5, 0.5};
  const auto a = array_response(geom, kTwoPi / 4.0, 0.0);  // elevation pi/2, azimuth 0
  REQUIRE(a.size() == 6);
  for (const cplx& c : a) {
    CHECK(c.real() == doctest::Approx(1.0));
    CHECK(c.imag() == doctest::Approx(0.0).scale(1));
  }
}

TEST_CASE("array_response single element") {
  const auto a = array_response(RisGeometry{1, 1, 0.5, 0.5}, 0.7, 1.3);
  REQUIRE(a.size() == 1);
  CHECK(a[0].real() == doctest::Approx(1.0));
}

TEST_CASE("array_response 2x2 endfire: hand-evaluated Kronecker product") {
  // elevation pi/2, azimuth pi/2, d = lambda/2: y-phases {0, -pi}, z-phases {0, 0}
  RisGeometry geom{2, 2, 0.5, 0.5};
  const auto a = array_response(geom, kTwoPi / 4.0, kTwoPi / 4.0);
  REQUIRE(a.size() == 4);
  const std::vector<double> expected{1.0, 1.0, -1.0, -1.0};  // column-wise order
  for (size_t i = 0; i < 4; ++i) {
    CHECK(a[i].real() == doctest::Approx(expected[i]));
    CHECK(a[i].imag() == doctest::Approx(0.0).scale(1));
  }
}

TEST_CASE("array_response entries keep unit modulus") {
  RngStream rng(5, 0);
  RisGeometry geom{5, 3, 0.4, 0.3};
  for (int rep = 0; rep < 50; ++rep) {
    const double el = rng.next_double() * kTwoPi / 2.0;
    const double az = rng.next_double() * kTwoPi;
    for (const cplx& c : array_response(geom, el, az))
      CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
  }
}

TEST_CASE("aoa_from_geometry basics") {
  ScenarioConfig s;
  s.ris_position = {0.0, 0.0, 0.0};

  s.bs_position = {0.0, 0.0, 1.0};  // zenith
  CHECK(aoa_from_geometry(s, RisLink::BsToRis).elevation == doctest::Approx(0.0).scale(1));

  s.bs_position = {1.0, 0.0, 0.0};
  const AnglePair a = aoa_from_geometry(s, RisLink::BsToRis);
  CHECK(a.elevation == doctest::Approx(kTwoPi / 4.0));
  CHECK(a.azimuth == doctest::Approx(0.0).scale(1));

  s.bs_position = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(aoa_from_geometry(s, RisLink::BsToRis), std::domain_error);
}

TEST_CASE("default deployment geometry constants") {
  ScenarioConfig s;  // defaults: RIS (-2,-1,0), BS (50,-200,20), UE (0,0,0)
  const double d_b = link_distance(s, RisLink::BsToRis);
  CHECK(d_b == doctest::Approx(std::sqrt(52.0 * 52.0 + 199.0 * 199.0 + 20.0 * 20.0)));
  CHECK(d_b == doctest::Approx(206.652).epsilon(1e-4));
  CHECK(link_distance(s, RisLink::RisToUe) == doctest::Approx(std::sqrt(5.0)));
  const AnglePair bs = aoa_from_geometry(s, RisLink::BsToRis);
  CHECK(bs.elevation == doctest::Approx(std::acos(20.0 / d_b)).epsilon(1e-12));
  CHECK(bs.elevation == doctest::Approx(1.4739).epsilon(1e-3));
}

TEST_CASE("rician_channel: kappa -> infinity collapses to scaled steering") {
  ScenarioConfig s;
  s.kappa = 1e12;
  RisGeometry geom{4, 2, 0.5, 0.5};
  RngStream rng(s.seed, 0);
  const auto h = rician_channel(geom, s, RisLink::BsToRis, rng);
  const double amp = std::pow(10.0, -ris_path_loss_db(link_distance(s, RisLink::BsToRis)) / 20.0);
  for (const cplx& c : h) CHECK(std::abs(c) == doctest::Approx(amp).epsilon(1e-12));
}

TEST_CASE("rician_channel: kappa = 0 matches the link budget variance") {
  ScenarioConfig s;  // kappa 0
  RisGeometry geom{10, 1, 0.5, 0.5};
  const double pl_lin =
      std::pow(10.0, -ris_path_loss_db(link_distance(s, RisLink::RisToUe)) / 10.0);
  double acc = 0.0;
  const int trials = 10000;  // x10 elements = 1e5 draws
  for (int t = 0; t < trials; ++t) {
    RngStream rng(1, static_cast<uint64_t>(t));
    for (const cplx& c : rician_channel(geom, s, RisLink::RisToUe, rng)) acc += std::norm(c);
  }
  const double mean = acc / (trials * geom.size());
  CHECK(mean == doctest::Approx(pl_lin).epsilon(0.03));
}

TEST_CASE("rician mixing preserves expected element power for any kappa") {
  RisGeometry geom{8, 1, 0.5, 0.5};
  for (double kappa : {0.0, 1.0, 10.0}) {
    ScenarioConfig s;
    s.kappa = kappa;
    const double pl_lin =
        std::pow(10.0, -ris_path_loss_db(link_distance(s, RisLink::BsToRis)) / 10.0);
    double acc = 0.0;
    const int trials = 12500;
    for (int t = 0; t < trials; ++t) {
      RngStream rng(2, static_cast<uint64_t>(t));
      for (const cplx& c : rician_channel(geom, s, RisLink::BsToRis, rng)) acc += std::norm(c);
    }
    CHECK(acc / (trials * geom.size()) == doctest::Approx(pl_lin).epsilon(0.03));
  }
}

TEST_CASE("rician_channel rejects negative kappa") {
  ScenarioConfig s;
  s.kappa = -0.5;
  RngStream rng(0, 0);
  CHECK_THROWS_AS(rician_channel(RisGeometry{2, 2, 0.5, 0.5}, s, RisLink::BsToRis, rng),
                  std::domain_error);
}

TEST_CASE("direct_link: blocked, scale, and variance") {
  ScenarioConfig s;
  s.direct_link_blocked = true;
  RngStream rng(3, 0);
  CHECK(direct_link(s, rng) == cplx{0.0, 0.0});

  // d0 = 1 m gives amplitude scale 10^(-32.6/20) ~ 0.02344
  CHECK(std::pow(10.0, -direct_path_loss_db(1.0) / 20.0) == doctest::Approx(0.023442).epsilon(1e-4));

  s.direct_link_blocked = false;
  const double pl_lin = std::pow(10.0, -direct_path_loss_db(direct_distance(s)) / 10.0);
  double acc = 0.0;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) {
    RngStream r(4, static_cast<uint64_t>(t));
    acc += std::norm(direct_link(s, r));
  }
  CHECK(acc / trials == doctest::Approx(pl_lin).epsilon(0.03));
}

TEST_CASE("cascade") {
  const std::vector<cplx> ju{{0.0, 1.0}};
  CHECK(cascade(ju, ju)[0].real() == doctest::Approx(1.0));  // conj(j) j = 1

  RngStream rng(6, 0);
  std::vector<cplx> ones(5, cplx{1.0, 0.0}), v(5);
  for (cplx& c : v) c = rng.next_cn();
  const auto through = cascade(ones, v);
  for (size_t i = 0; i < v.size(); ++i) CHECK(std::abs(through[i] - v[i]) < 1e-15);

  std::vector<cplx> u(4), b(4);
  for (cplx& c : u) c = rng.next_cn();
  for (cplx& c : b) c = rng.next_cn();
  const auto h = cascade(u, b);
  for (size_t i = 0; i < 4; ++i) CHECK(std::abs(h[i] - std::conj(u[i]) * b[i]) < 1e-15);

  CHECK_THROWS_AS(cascade(u, ones), std::invalid_argument);
}

namespace {

// Q = P^T hadamard R built explicitly from the MISO definition.
double quadratic_form(const MisoInstance& miso, const PhaseConfig& cfg) {
  const int n = miso.n;
  std::vector<cplx> u(static_cast<size_t>(n), cplx{0.0, 0.0});
  for (int col = 0; col < miso.m; ++col)
    for (int row = 0; row < n; ++row)
      u[static_cast<size_t>(row)] +=
          miso.c[static_cast<size_t>(col) * static_cast<size_t>(n) + static_cast<size_t>(row)] *
          miso.x[static_cast<size_t>(col)];
  // P[a][b] = u_a conj(u_b); Q[a][b] = P[b][a] * conj(b_a) b_b
  cplx total{0.0, 0.0};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const cplx q = u[static_cast<size_t>(b)] * std::conj(u[static_cast<size_t>(a)]) *
                     std::conj(miso.b[static_cast<size_t>(a)]) * miso.b[static_cast<size_t>(b)];
      const cplx wa = std::polar(1.0, cfg.theta(a));
      const cplx wb = std::polar(1.0, cfg.theta(b));
      total += std::conj(wa) * q * wb;
    }
  return total.real();
}

MisoInstance random_miso(RngStream& rng, int n, int m) {
  MisoInstance miso;
  miso.n = n;
  miso.m = m;
  miso.c.resize(static_cast<size_t>(n) * static_cast<size_t>(m));
  miso.x.resize(static_cast<size_t>(m));
  miso.b.resize(static_cast<size_t>(n));
  for (cplx& c : miso.c) c = rng.next_cn();
  for (cplx& c : miso.x) c = rng.next_cn();
  for (cplx& c : miso.b) c = rng.next_cn();
  return miso;
}

}  // namespace

TEST_CASE("miso_reduce: degenerate M = 1 equals the scaled column") {
  RngStream rng(8, 0);
  MisoInstance miso = random_miso(rng, 4, 1);
  miso.x = {cplx{1.0, 0.0}};
  miso.b.assign(4, cplx{1.0, 0.0});
  const ChannelInstance ch = miso_reduce(miso);
  CHECK(ch.h0() == cplx{0.0, 0.0});
  for (int e = 0; e < 4; ++e) CHECK(std::abs(ch.h(e) - miso.c[static_cast<size_t>(e)]) < 1e-15);
}

TEST_CASE("miso_reduce reproduces the explicit Q-matrix objective") {
  RngStream rng(9, 0);
  const MisoInstance miso = random_miso(rng, 5, 3);
  const ChannelInstance ch = miso_reduce(miso);
  const PhaseResolution res(4);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<int> ks(5);
    for (int& v : ks) v = static_cast<int>(rng.next_u32() % 4);
    const PhaseConfig cfg(res, ks);
    CHECK(rel_close(quadratic_form(miso, cfg), evaluate_gain(ch, cfg).power(), 1e-9));
  }
}

TEST_CASE("miso_reduce with orthogonal columns and x = e1") {
  // C columns [1,1] and [1,-1] (orthogonal), x = e1, so u = first column.
  MisoInstance miso;
  miso.n = 2;
  miso.m = 2;
  miso.c = {cplx{1, 0}, cplx{1, 0}, cplx{1, 0}, cplx{-1, 0}};
  miso.x = {cplx{1, 0}, cplx{0, 0}};
  miso.b = {cplx{0, 1}, cplx{2, 0}};
  const ChannelInstance ch = miso_reduce(miso);
  CHECK(std::abs(ch.h(0) - cplx{0, 1}) < 1e-15);
  CHECK(std::abs(ch.h(1) - cplx{2, 0}) < 1e-15);
}

TEST_CASE("p2_augment: blocked direct link appends a zero and extraction rotates") {
  RngStream rng(10, 0);
  const ChannelInstance ch = random_instance(rng, 5, false);
  const ChannelInstance aug = p2_augment(ch);
  REQUIRE(aug.size() == 6);
  CHECK(aug.h(5) == cplx{0.0, 0.0});
  CHECK(aug.h0() == cplx{0.0, 0.0});

  PhaseConfig solved(PhaseResolution(4), {1, 2, 3, 0, 1, 2});
  const PhaseConfig extracted = p2_extract(solved);
  REQUIRE(extracted.size() == 5);
  CHECK(extracted.indices == std::vector<int>{3, 0, 1, 2, 3});
}

TEST_CASE("p2_augment round-trip objective identity") {
  RngStream rng(11, 0);
  for (int rep = 0; rep < 40; ++rep) {
    const bool with_direct = rep % 2 == 0;
    const ChannelInstance ch = random_instance(rng, 6, with_direct);
    const ChannelInstance aug = p2_augment(ch);
    const SolveResult aug_res = algorithm3(aug, 4);
    const PhaseConfig extracted = p2_extract(aug_res.config);
    CHECK(rel_close(evaluate_gain(ch, extracted).power(), aug_res.objective, 1e-9));
  }
}

TEST_CASE("p2_augment with N = 1 reduces to the best relative phase") {
  RngStream rng(12, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const ChannelInstance ch = random_instance(rng, 1, true);
    const int k_levels = 4;
    const ChannelInstance aug = p2_augment(ch);
    const SolveResult aug_res = algorithm3(aug, k_levels);
    double best = 0.0;
    const PhaseResolution res(k_levels);
    for (int k = 0; k < k_levels; ++k)
      best = std::max(best, std::norm(ch.h0() + ch.h(0) * res.root(k)));
    CHECK(rel_close(aug_res.objective, best, 1e-9));
  }
}

TEST_CASE("sample_channel is reproducible per (seed, trial)") {
  ScenarioConfig s;
  s.seed = 99;
  RisGeometry geom{4, 4, 0.5, 0.5};
  const ChannelInstance a = sample_channel(geom, s, 3);
  const ChannelInstance b = sample_channel(geom, s, 3);
  const ChannelInstance c = sample_channel(geom, s, 4);
  REQUIRE(a.size() == b.size());
  bool same_ac = true;
  for (int e = 0; e < a.size(); ++e) {
    CHECK(a.h(e) == b.h(e));
    if (a.h(e) != c.h(e)) same_ac = false;
  }
  CHECK(a.h0() == b.h0());
  CHECK_FALSE(same_ac);
}

TEST_CASE("RisGeometry::for_elements near-square factorization") {
  CHECK(RisGeometry::for_elements(64).n_y == 8);
  CHECK(RisGeometry::for_elements(64).n_z == 8);
  CHECK(RisGeometry::for_elements(2000).size() == 2000);
  CHECK(RisGeometry::for_elements(7).size() == 7);
  CHECK(RisGeometry::for_elements(1).size() == 1);
}

TEST_SUITE_END();
