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

#include <vector>

namespace arraydesign {

/// Zero-mean Gaussian prior over Fourier scene coefficients beta_m for
/// m in [-m_half, m_half]. Variances follow a power-law decay
/// sigma_m^2 = c / |m|^(2r) (sigma_0^2 = c), with c chosen so the variance
/// sum over ALL integers m equals total_power. The retained modes therefore
/// carry total_power - tail_epsilon of energy.
struct PriorSpec {
  int r = 1;
  double total_power = 1.0;
  int m_half = 0;

  /// variances[m + m_half] = sigma_m^2, strictly positive, symmetric in m.
  std::vector<double> variances;

  /// Energy in the discarded modes |m| > m_half. The value is the midpoint
  /// of a rigorous bracket; tail_halfwidth is the bracket half-width.
  double tail_epsilon = 0.0;
  double tail_halfwidth = 0.0;

  int mode_count() const { return 2 * m_half + 1; }

  double variance(int m) const {
    return variances[static_cast<std::size_t>(m + m_half)];
  }
};

/// Constructs the prior. The normalization constant is evaluated from the
/// infinite series (Euler-Maclaurin accelerated), not the truncated one.
/// The tail is a partial sum out to 10 * m_half plus an integral-bracket
/// remainder, so tail_halfwidth is tiny relative to tail_epsilon.
///
/// Requires r >= 1, total_power > 0, m_half >= 1; throws
/// std::invalid_argument otherwise.
PriorSpec build_prior(int r, double total_power, int m_half);

}  // namespace arraydesign
