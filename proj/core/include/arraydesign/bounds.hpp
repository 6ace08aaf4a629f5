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

#include <optional>

#include "arraydesign/model.hpp"
#include "arraydesign/optimizer.hpp"

namespace arraydesign {

/// Window for the mutual-information change caused by truncating the scene
/// to the retained modes, for an n-sensor design: the true (untruncated)
/// MI lies within (mi + lo, mi + hi). Valid only under the hypothesis
/// epsilon < noise_var * n^(-3/2); outside it the bound is inapplicable
/// and nullopt is returned (not an error).
struct TruncationWindow {
  double lo = 0.0;
  double hi = 0.0;
};
std::optional<TruncationWindow> truncation_window(double epsilon,
                                                  double noise_var,
                                                  int n_sensors);

/// Upper bound on the MI lost by restricting sensors to a grid of pitch
/// delta: n * log(1 + 4 delta P (1 + delta) n^(3/2) / (lambda noise_var)).
double discretization_penalty(double delta, double total_power, double lambda,
                              double noise_var, int n_sensors);

/// End-to-end certificate against the continuum optimum combining the
/// truncation and discretization penalties:
///   greedy_lo: the greedy design retains at least
///              (1 - 1/e) (mi - penalty) of the continuum optimum value;
///   opt_hi:    the continuum optimum is at most mi / (1 - 1/e) + penalty.
/// Shares the truncation hypothesis; nullopt when inapplicable.
struct CombinedCertificate {
  double greedy_lo = 0.0;
  double opt_hi = 0.0;
};
std::optional<CombinedCertificate> combined_certificate(
    double design_mi_nats, double epsilon, double delta, double total_power,
    double lambda, double noise_var, int n_sensors);

/// Everything the design report prints about certificate quality.
/// "Inapplicable" is a value here, not an exception: applicable flags tell
/// whether the hypothesis-gated entries hold, and the numeric fields are
/// meaningful only when they do.
struct BoundsReport {
  double epsilon = 0.0;
  double epsilon_halfwidth = 0.0;
  bool epsilon_injected = false;
  double delta = 0.0;
  int n_sensors = 0;
  double noise_var = 0.0;

  bool truncation_applicable = false;
  double truncation_lo = 0.0;
  double truncation_hi = 0.0;

  double discretization_hi = 0.0;

  bool combined_applicable = false;
  double combined_greedy_lo = 0.0;
  double combined_opt_hi = 0.0;

  double nemhauser_hi = 0.0;
  double online_hi = 0.0;
};

/// Assembles the report for a finished design. `inject_epsilon` overrides
/// the prior's computed tail energy (used to reproduce externally supplied
/// epsilon values); the report records that the value was injected.
BoundsReport build_bounds_report(const SensingModel& model,
                                 const Design& design,
                                 std::optional<double> inject_epsilon);

}  // namespace arraydesign
