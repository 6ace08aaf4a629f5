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
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arraydesign/model.hpp"
#include "arraydesign/objective.hpp"
#include "arraydesign/rng.hpp"

namespace arraydesign {

/// One draw of scene Fourier coefficients; coeffs[m + m_half] = beta_m,
/// circularly symmetric complex Gaussian with variance sigma_m^2.
struct SceneSample {
  Eigen::VectorXcd coeffs;
};

SceneSample sample_scene(const PriorSpec& prior, RngStream& rng);

/// Noisy far-field measurements at the chosen sensors:
/// f_i = k(x_i)^T beta + w_i with w_i complex normal of variance
/// model.noise_var(). Only noise is drawn from `rng`.
Eigen::VectorXcd simulate_measurements(const SensingModel& model,
                                       std::span<const int> sensors,
                                       const SceneSample& scene,
                                       RngStream& rng);

/// Gaussian posterior of the scene given measurements. The posterior
/// covariance is real (the kernel is real and the prior is circular).
struct PosteriorResult {
  Eigen::VectorXcd mean;
  Eigen::MatrixXd cov;
  double logdet_cov = 0.0;
  double trace_cov = 0.0;
};

/// Exact conjugate update. Throws std::invalid_argument on duplicate or
/// out-of-range sensors or a measurement length mismatch.
PosteriorResult posterior(const SensingModel& model,
                          std::span<const int> sensors,
                          const Eigen::VectorXcd& measurements);

/// Squared coefficient-domain error ||truth - estimate||^2. By Parseval
/// this equals the mean squared scene error over the angular variable.
double scene_mse(const SceneSample& truth, const Eigen::VectorXcd& estimate);

/// Scene field x(psi) = sum_m beta_m exp(j 2 pi m psi) at the given
/// normalized angles.
Eigen::VectorXcd synthesize_scene(const SceneSample& scene,
                                  const Eigen::VectorXd& angles);

/// A design entering the Monte-Carlo cross table.
struct McDesign {
  std::string label;
  double target_snr_db = 0.0;
  std::vector<int> indices;
};

/// One (design, evaluation SNR) cell of the cross table.
struct MseCell {
  std::string design_label;
  double design_target_snr_db = 0.0;
  double eval_snr_db = 0.0;
  int trials = 0;
  double mean_mse = 0.0;
  double stderr_mse = 0.0;
  /// Analytic expected MSE, trace of the posterior covariance.
  double trace_posterior_cov = 0.0;
};

/// Paired Monte-Carlo evaluation: trial t draws its scene from
/// stream(seed, t) and its noise at eval SNR s from stream(seed, t, s),
/// so every design sees identical scenes and noise. Results are bitwise
/// reproducible for any thread count: trials are partitioned by index and
/// reduced in trial order. Throws std::invalid_argument for trials < 1,
/// an empty design list, empty eval_snrs_db, or bad design indices.
std::vector<MseCell> mc_mse(const SensingModel& model,
                            const std::vector<McDesign>& designs,
                            const std::vector<double>& eval_snrs_db,
                            int trials, std::uint64_t seed, int threads);

}  // namespace arraydesign
