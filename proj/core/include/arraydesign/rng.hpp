// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace arraydesign {

/// Counter-addressed pseudo-random stream built on the splitmix64 mixer.
///
/// A stream is named by a seed plus up to two substream counters. Streams
/// with distinct names are statistically independent, and the draws from a
/// given name are identical across runs, platforms, and worker counts. That
/// property is what makes Monte-Carlo trials pairable: trial t can be
/// re-synthesized anywhere from stream(seed, t) without coordination.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(finalize(seed + kGamma)) {}

  RngStream(std::uint64_t seed, std::uint64_t a) : RngStream(seed) {
    state_ = derive(state_, a);
  }

  RngStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
      : RngStream(seed, a) {
    state_ = derive(state_, b);
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return finalize(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; generates draws in pairs.
  double next_normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 lies in (0, 1] so the logarithm is finite.
    const double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = double(next_u64() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Circularly symmetric complex normal with the given total variance:
  /// real and imaginary parts are independent N(0, variance / 2).
  std::complex<double> next_complex_normal(double variance) {
    const double scale = std::sqrt(0.5 * variance);
    const double re = next_normal();
    const double im = next_normal();
    return {scale * re, scale * im};
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Folding a counter through an extra finalize keeps stream names with
  // different arities (seed,t) vs (seed,t,0) distinct.
  static constexpr std::uint64_t derive(std::uint64_t state, std::uint64_t v) {
    return finalize(state ^ finalize(v + kGamma));
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace arraydesign
