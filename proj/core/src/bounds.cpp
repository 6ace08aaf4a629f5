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

#include "arraydesign/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace arraydesign {
namespace {

void check_common(double epsilon, double noise_var, int n_sensors) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("bounds: epsilon must be >= 0 and finite");
  if (!(noise_var > 0.0) || !std::isfinite(noise_var))
    throw std::invalid_argument("bounds: noise_var must be positive");
  if (n_sensors < 0)
    throw std::invalid_argument("bounds: n_sensors must be >= 0");
}

}  // namespace

std::optional<TruncationWindow> truncation_window(double epsilon,
                                                  double noise_var,
                                                  int n_sensors) {
  check_common(epsilon, noise_var, n_sensors);
  const double n = double(n_sensors);
  const double load = epsilon * std::pow(n, 1.5) / noise_var;
  // Hypothesis epsilon < noise_var * n^(-3/2); equivalently load < 1,
  // which also keeps the upper log argument positive.
  if (!(load < 1.0)) return std::nullopt;
  TruncationWindow window;
  window.lo = -n * std::log1p(load);
  window.hi = -n * std::log1p(-load);
  return window;
}

double discretization_penalty(double delta, double total_power, double lambda,
                              double noise_var, int n_sensors) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("bounds: delta must be >= 0 and finite");
  if (!(total_power > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("bounds: total_power and lambda must be > 0");
  check_common(0.0, noise_var, n_sensors);
  const double n = double(n_sensors);
  const double load =
      4.0 * delta * total_power * (1.0 + delta) * std::pow(n, 1.5) /
      (lambda * noise_var);
  return n * std::log1p(load);
}

std::optional<CombinedCertificate> combined_certificate(
    double design_mi_nats, double epsilon, double delta, double total_power,
    double lambda, double noise_var, int n_sensors) {
  const auto window = truncation_window(epsilon, noise_var, n_sensors);
  if (!window) return std::nullopt;
  const double penalty =
      discretization_penalty(delta, total_power, lambda, noise_var,
                             n_sensors) +
      window->hi;
  const double ratio = 1.0 - std::exp(-1.0);
  CombinedCertificate cert;
  cert.greedy_lo = ratio * (design_mi_nats - penalty);
  cert.opt_hi = design_mi_nats / ratio + penalty;
  return cert;
}

BoundsReport build_bounds_report(const SensingModel& model,
                                 const Design& design,
                                 std::optional<double> inject_epsilon) {
  BoundsReport report;
  report.epsilon = inject_epsilon.value_or(model.prior().tail_epsilon);
  report.epsilon_halfwidth =
      inject_epsilon ? 0.0 : model.prior().tail_halfwidth;
  report.epsilon_injected = inject_epsilon.has_value();
  report.delta = model.grid().delta;
  report.n_sensors = static_cast<int>(design.chosen_indices.size());
  report.noise_var = model.noise_var();

  if (const auto window =
          truncation_window(report.epsilon, report.noise_var,
                            report.n_sensors)) {
    report.truncation_applicable = true;
    report.truncation_lo = window->lo;
    report.truncation_hi = window->hi;
  }

  report.discretization_hi = discretization_penalty(
      report.delta, model.prior().total_power, model.lambda(),
      report.noise_var, report.n_sensors);

  if (const auto cert = combined_certificate(
          design.mi_nats, report.epsilon, report.delta,
          model.prior().total_power, model.lambda(), report.noise_var,
          report.n_sensors)) {
    report.combined_applicable = true;
    report.combined_greedy_lo = cert->greedy_lo;
    report.combined_opt_hi = cert->opt_hi;
  }

  report.nemhauser_hi = nemhauser_bound(design.mi_nats);
  report.online_hi = online_bound(model, design);
  return report;
}

}  // namespace arraydesign
