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

#include "arraydesign/prior.hpp"

#include <cmath>
#include <stdexcept>

namespace arraydesign {
namespace {

// sum_{m=1}^inf m^(-s) for s >= 2, by direct summation plus an
// Euler-Maclaurin tail. The remainder after the m^(-s-3) correction is
// below 1e-24 for the cutoff used here, far inside the 1e-10 relative
// requirement on the normalization constant.
double zeta_series(double s) {
  constexpr int kCutoff = 4096;
  double sum = 0.0;
  for (int m = kCutoff; m >= 1; --m) sum += std::pow(double(m), -s);
  const double a = double(kCutoff) + 1.0;
  double tail = std::pow(a, 1.0 - s) / (s - 1.0);
  tail += 0.5 * std::pow(a, -s);
  tail += s / 12.0 * std::pow(a, -s - 1.0);
  tail -= s * (s + 1.0) * (s + 2.0) / 720.0 * std::pow(a, -s - 3.0);
  return sum + tail;
}

}  // namespace

PriorSpec build_prior(int r, double total_power, int m_half) {
  if (r < 1) throw std::invalid_argument("prior: r must be >= 1");
  if (!(total_power > 0.0) || !std::isfinite(total_power))
    throw std::invalid_argument("prior: total_power must be positive and finite");
  if (m_half < 1) throw std::invalid_argument("prior: m_half must be >= 1");

  const double s = 2.0 * r;
  const double c = total_power / (1.0 + 2.0 * zeta_series(s));

  PriorSpec prior;
  prior.r = r;
  prior.total_power = total_power;
  prior.m_half = m_half;
  prior.variances.resize(static_cast<std::size_t>(2 * m_half + 1));
  for (int m = -m_half; m <= m_half; ++m) {
    const double v = m == 0 ? c : c * std::pow(double(std::abs(m)), -s);
    prior.variances[static_cast<std::size_t>(m + m_half)] = v;
  }

  // Tail energy 2c * sum_{m > m_half} m^(-s): explicit partial sum out to
  // 10 * m_half, then the integral bracket
  //   (B+1)^(1-s)/(s-1) <= remainder <= B^(1-s)/(s-1),  B = 10 * m_half.
  const int far = 10 * m_half;
  double partial = 0.0;
  for (int m = far; m > m_half; --m) partial += std::pow(double(m), -s);
  const double rem_lo = std::pow(double(far) + 1.0, 1.0 - s) / (s - 1.0);
  const double rem_hi = std::pow(double(far), 1.0 - s) / (s - 1.0);
  const double tail_lo = 2.0 * c * (partial + rem_lo);
  const double tail_hi = 2.0 * c * (partial + rem_hi);
  prior.tail_epsilon = 0.5 * (tail_lo + tail_hi);
  prior.tail_halfwidth = 0.5 * (tail_hi - tail_lo);
  return prior;
}

}  // namespace arraydesign
