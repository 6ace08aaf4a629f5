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

#include <Eigen/Dense>
#include <memory>

#include "arraydesign/grid.hpp"
#include "arraydesign/prior.hpp"

namespace arraydesign {

/// Normalized sinc: sin(pi x) / (pi x), with sinc(0) = 1.
double sinc(double x);

/// Row of the measurement kernel for a sensor at position x: entry
/// (m + m_half) couples the sensor to scene mode m with weight
/// sinc(m + 2 x / lambda). A sensor at x = -m lambda / 2 reads mode m
/// exactly and is blind to every other retained mode.
Eigen::VectorXd kernel_row(double x, const PriorSpec& prior, double lambda);

/// Immutable measurement model shared by the optimizer, the certificate
/// bounds, and the Monte-Carlo evaluation. Heavy state (the candidate
/// signal covariance) is shared between noise-level variants, so
/// with_noise() is cheap.
class SensingModel {
 public:
  double lambda() const { return lambda_; }
  double noise_var() const { return noise_var_; }
  double snr_db() const { return snr_db_; }
  int budget_ref() const { return budget_ref_; }
  const CandidateGrid& grid() const { return *grid_; }
  const PriorSpec& prior() const { return *prior_; }

  /// Candidate-by-candidate signal covariance C with
  /// C(i, j) = sum_m sigma_m^2 k_m(x_i) k_m(x_j); real, symmetric, PSD.
  const Eigen::MatrixXd& signal_cov() const { return *signal_cov_; }

  /// Same geometry and prior at a different operating noise level.
  SensingModel with_noise(double snr_db, int budget_ref) const;

 private:
  friend SensingModel build_model(double, double, int, const CandidateGrid&,
                                  const PriorSpec&);

  double lambda_ = 0.0;
  double noise_var_ = 0.0;
  double snr_db_ = 0.0;
  int budget_ref_ = 0;
  std::shared_ptr<const CandidateGrid> grid_;
  std::shared_ptr<const PriorSpec> prior_;
  std::shared_ptr<const Eigen::MatrixXd> signal_cov_;
};

/// Noise variance for a target per-measurement SNR: the total received
/// signal power is split as if budget_ref sensors were deployed, so
/// noise_var = total_power / (budget_ref * 10^(snr_db / 10)).
double noise_var_for_snr(double snr_db, int budget_ref, double total_power);

/// Assembles the model. Throws std::invalid_argument for lambda <= 0,
/// non-finite snr_db, budget_ref < 1, an empty grid, or a prior/grid
/// mismatch in basic sanity (empty variances).
SensingModel build_model(double lambda, double snr_db, int budget_ref,
                         const CandidateGrid& grid, const PriorSpec& prior);

}  // namespace arraydesign
