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

#include "arraydesign/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "arraydesign/errors.hpp"

namespace arraydesign {
namespace {

// Pivots below this fraction of the noise floor trigger one rebuild of the
// factorization from scratch before the extension is declared unusable.
constexpr double kPivotFloor = 1e-14;

Eigen::MatrixXd measurement_cov(const SensingModel& model,
                                std::span<const int> indices) {
  const Eigen::MatrixXd& cov = model.signal_cov();
  const int n = static_cast<int>(indices.size());
  Eigen::MatrixXd sigma(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sigma(i, j) = cov(indices[i], indices[j]);
  sigma.diagonal().array() += model.noise_var();
  return sigma;
}

void check_indices(const SensingModel& model, std::span<const int> indices) {
  std::unordered_set<int> seen;
  for (int x : indices) {
    if (x < 0 || x >= model.grid().size())
      throw std::out_of_range("objective: candidate index out of range");
    if (!seen.insert(x).second)
      throw std::invalid_argument("objective: duplicate candidate index");
  }
}

}  // namespace

double mutual_information(const SensingModel& model,
                          std::span<const int> indices) {
  check_indices(model, indices);
  if (indices.empty()) return 0.0;

  Eigen::LLT<Eigen::MatrixXd> llt(measurement_cov(model, indices));
  if (llt.info() != Eigen::Success)
    throw numerical_error("objective: measurement covariance is not PD");

  const int n = static_cast<int>(indices.size());
  double logdet = 0.0;
  const auto& l = llt.matrixLLT();
  for (int i = 0; i < n; ++i) logdet += std::log(l(i, i));
  return 2.0 * logdet - double(n) * std::log(model.noise_var());
}

SelectionState::SelectionState(const SensingModel& model)
    : model_(&model),
      member_(static_cast<std::size_t>(model.grid().size()), 0) {}

bool SelectionState::contains(int x) const {
  if (x < 0 || x >= model_->grid().size())
    throw std::out_of_range("objective: candidate index out of range");
  return member_[static_cast<std::size_t>(x)] != 0;
}

double SelectionState::pivot_for(int x, Eigen::VectorXd* solved) const {
  const Eigen::MatrixXd& cov = model_->signal_cov();
  const double diag = model_->noise_var() + cov(x, x);
  const int n = size();
  if (n == 0) return diag;

  Eigen::VectorXd cross(n);
  for (int i = 0; i < n; ++i) cross[i] = cov(chosen_[i], x);
  chol_.triangularView<Eigen::Lower>().solveInPlace(cross);
  const double pivot = diag - cross.squaredNorm();
  if (solved) *solved = std::move(cross);
  return pivot;
}

double SelectionState::marginal_gain(int x) const {
  if (contains(x))
    throw std::invalid_argument("objective: candidate already chosen");
  const double pivot = pivot_for(x, nullptr);
  if (!(pivot > 0.0))
    throw numerical_error("objective: nonpositive gain pivot");
  return std::log(pivot / model_->noise_var());
}

void SelectionState::append(int x) {
  if (contains(x))
    throw std::invalid_argument("objective: candidate already chosen");

  const int n = size();
  const double noise = model_->noise_var();
  Eigen::VectorXd solved;
  double pivot = pivot_for(x, &solved);
  bool rebuilt = false;

  if (!(pivot >= kPivotFloor * noise)) {
    // One chance: rounding in the incremental factor can poison the pivot;
    // a fresh factorization of the extended covariance decides for real.
    std::vector<int> extended = chosen_;
    extended.push_back(x);
    Eigen::LLT<Eigen::MatrixXd> llt(measurement_cov(*model_, extended));
    if (llt.info() != Eigen::Success)
      throw numerical_error("objective: extension is numerically singular");
    chol_ = llt.matrixLLT();
    chol_.triangularView<Eigen::StrictlyUpper>().setZero();
    pivot = chol_(n, n) * chol_(n, n);
    if (!(pivot >= kPivotFloor * noise))
      throw numerical_error("objective: extension is numerically singular");
    rebuilt = true;
  }

  double gain;
  if (rebuilt) {
    // Re-anchor the running value on the fresh factorization.
    double logdet = 0.0;
    for (int i = 0; i <= n; ++i) logdet += std::log(chol_(i, i));
    const double fresh_mi = 2.0 * logdet - double(n + 1) * std::log(noise);
    gain = fresh_mi - mi_;
    mi_ = fresh_mi;
  } else {
    chol_.conservativeResize(n + 1, n + 1);
    if (n > 0) {
      chol_.row(n).head(n) = solved;
      chol_.col(n).head(n).setZero();
    }
    chol_(n, n) = std::sqrt(pivot);
    gain = std::log(pivot / noise);
    mi_ += gain;
  }

  chosen_.push_back(x);
  gains_.push_back(gain);
  member_[static_cast<std::size_t>(x)] = 1;
}

SelectionState SelectionState::extended(int x) const {
  SelectionState next = *this;
  next.append(x);
  return next;
}

}  // namespace arraydesign
