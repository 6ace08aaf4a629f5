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

#include "arraydesign/model.hpp"

#include <cmath>
#include <stdexcept>

namespace arraydesign {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

CandidateGrid make_uniform_grid(double aperture_min, double aperture_max,
                                double delta) {
  if (!std::isfinite(aperture_min) || !std::isfinite(aperture_max))
    throw std::invalid_argument("grid: aperture bounds must be finite");
  if (!(aperture_min < aperture_max))
    throw std::invalid_argument("grid: aperture_min must be < aperture_max");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("grid: delta must be positive and finite");

  const double steps = (aperture_max - aperture_min) / delta;
  const double rounded = std::round(steps);
  long long count;
  if (std::abs(steps - rounded) <= 1e-9 * std::max(1.0, std::abs(steps))) {
    count = static_cast<long long>(rounded);
  } else {
    count = static_cast<long long>(std::floor(steps));
  }
  if (count < 0) count = 0;

  CandidateGrid grid;
  grid.delta = delta;
  grid.aperture_min = aperture_min;
  grid.aperture_max = aperture_max;
  grid.positions.reserve(static_cast<std::size_t>(count) + 1);
  for (long long i = 0; i <= count; ++i)
    grid.positions.push_back(aperture_min + double(i) * delta);
  return grid;
}

double sinc(double x) {
  const double t = kPi * x;
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

Eigen::VectorXd kernel_row(double x, const PriorSpec& prior, double lambda) {
  const int m_half = prior.m_half;
  Eigen::VectorXd row(prior.mode_count());
  const double shift = 2.0 * x / lambda;
  for (int m = -m_half; m <= m_half; ++m)
    row[m + m_half] = sinc(double(m) + shift);
  return row;
}

double noise_var_for_snr(double snr_db, int budget_ref, double total_power) {
  return total_power / (double(budget_ref) * std::pow(10.0, snr_db / 10.0));
}

SensingModel build_model(double lambda, double snr_db, int budget_ref,
                         const CandidateGrid& grid, const PriorSpec& prior) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("model: lambda must be positive and finite");
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("model: snr_db must be finite");
  if (budget_ref < 1)
    throw std::invalid_argument("model: budget_ref must be >= 1");
  if (grid.positions.empty())
    throw std::invalid_argument("model: grid must be nonempty");
  if (prior.variances.empty() ||
      prior.variances.size() != static_cast<std::size_t>(prior.mode_count()))
    throw std::invalid_argument("model: prior variances malformed");

  const int n = grid.size();
  const int modes = prior.mode_count();

  Eigen::MatrixXd weighted(n, modes);  // rows k(x_i) scaled by sigma_m
  Eigen::VectorXd sigma(modes);
  for (int j = 0; j < modes; ++j) sigma[j] = std::sqrt(prior.variances[j]);
  for (int i = 0; i < n; ++i)
    weighted.row(i) =
        kernel_row(grid.positions[i], prior, lambda).cwiseProduct(sigma);

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(weighted);
  cov = cov.selfadjointView<Eigen::Lower>();  // exact symmetry

  SensingModel model;
  model.lambda_ = lambda;
  model.snr_db_ = snr_db;
  model.budget_ref_ = budget_ref;
  model.noise_var_ = noise_var_for_snr(snr_db, budget_ref, prior.total_power);
  model.grid_ = std::make_shared<const CandidateGrid>(grid);
  model.prior_ = std::make_shared<const PriorSpec>(prior);
  model.signal_cov_ = std::make_shared<const Eigen::MatrixXd>(std::move(cov));
  return model;
}

SensingModel SensingModel::with_noise(double snr_db, int budget_ref) const {
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("model: snr_db must be finite");
  if (budget_ref < 1)
    throw std::invalid_argument("model: budget_ref must be >= 1");
  SensingModel model = *this;
  model.snr_db_ = snr_db;
  model.budget_ref_ = budget_ref;
  model.noise_var_ =
      noise_var_for_snr(snr_db, budget_ref, prior_->total_power);
  return model;
}

}  // namespace arraydesign
