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

#ifndef RISOPT_RNG_HPP
#define RISOPT_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>

namespace risopt {

/// Philox4x32-10 block function (Salmon et al., counter-based).
/// Maps a 128-bit counter and 64-bit key to four 32-bit outputs.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

/// One logical random stream addressed by (seed, stream id).
///
/// seed is the Philox key; the stream id occupies the upper counter words
/// and a 64-bit block counter occupies the lower ones, so any two distinct
/// (seed, stream) pairs yield independent sequences. Workers drawing from
/// streams derived per trial index therefore reproduce the single-threaded
/// sequence exactly, whatever the thread count.
class RngStream {
 public:
  RngStream(uint64_t seed, uint64_t stream);

  uint32_t next_u32();
  uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_double();

  /// Uniform on (0, 1]; safe as a log() argument.
  double next_open_double();

  /// Standard normal via Box-Muller (one uniform pair per call).
  double next_gaussian();

  /// Circularly symmetric complex Gaussian CN(0, 1).
  std::complex<double> next_cn();

 private:
  void refill();

  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 2> stream_;
  uint64_t block_ = 0;
  std::array<uint32_t, 4> buffer_{};
  int pos_ = 4;  // buffer exhausted
};

}  // namespace risopt

#endif  // RISOPT_RNG_HPP
