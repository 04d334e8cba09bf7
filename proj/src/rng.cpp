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

#include "risopt/rng.hpp"

#include <cmath>

namespace risopt {

namespace {

constexpr double kTwoPiRng = 6.283185307179586476925286766559;

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<uint32_t, 4>& c, const std::array<uint32_t, 2>& k) {
  const uint64_t p0 = static_cast<uint64_t>(kPhiloxM0) * c[0];
  const uint64_t p1 = static_cast<uint64_t>(kPhiloxM1) * c[2];
  const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
  const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key) {
  philox_round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
    philox_round(counter, key);
  }
  return counter;
}

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      stream_{static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)} {}

void RngStream::refill() {
  buffer_ = philox4x32({static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
                        stream_[0], stream_[1]},
                       key_);
  ++block_;
  pos_ = 0;
}

uint32_t RngStream::next_u32() {
  if (pos_ >= 4) refill();
  return buffer_[static_cast<size_t>(pos_++)];
}

uint64_t RngStream::next_u64() {
  const uint64_t lo = next_u32();
  const uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open_double() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  const double u = next_open_double();
  const double v = next_double();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPiRng * v);
}

std::complex<double> RngStream::next_cn() {
  const double u = next_open_double();
  const double v = next_double();
  const double r = std::sqrt(-std::log(u));  // |X|^2 ~ Exp(1), so E|X|^2 = 1
  return {r * std::cos(kTwoPiRng * v), r * std::sin(kTwoPiRng * v)};
}

}  // namespace risopt
