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
#include <span>
#include <vector>

#include "arraydesign/model.hpp"

namespace arraydesign {

/// Mutual information (nats) between the scene and the measurements taken
/// at the candidate subset `indices`:
///   G(S) = log det(I + C_SS / noise_var)
/// evaluated as log det(noise_var I + C_SS) - |S| log(noise_var).
/// Set semantics: duplicate indices throw std::invalid_argument, indices
/// out of range throw std::out_of_range. G(empty) = 0. The value does not
/// depend on ordering. Throws numerical_error if the factorization fails.
double mutual_information(const SensingModel& model, std::span<const int> indices);

/// Incrementally extended selection with a maintained Cholesky factor of
/// noise_var I + C_SS. marginal_gain costs O(|S|^2); extended() costs
/// O(|S|^2) plus the copy. Value semantics: extended() returns a new state
/// and never mutates the receiver.
class SelectionState {
 public:
  explicit SelectionState(const SensingModel& model);

  const SensingModel& model() const { return *model_; }
  const std::vector<int>& chosen() const { return chosen_; }
  /// Per-step marginal gains, in selection order.
  const std::vector<double>& gains() const { return gains_; }
  double mi_nats() const { return mi_; }
  int size() const { return static_cast<int>(chosen_.size()); }
  bool contains(int x) const;

  /// G(S + x) - G(S) without changing the state. In exact arithmetic this
  /// is nonnegative; rounding can produce values down to about -1e-15.
  double marginal_gain(int x) const;

  /// New state with x appended. If the incremental pivot falls below
  /// 1e-14 * noise_var the factor is rebuilt from scratch once; a failure
  /// after that raises numerical_error.
  SelectionState extended(int x) const;

 private:
  void append(int x);
  double pivot_for(int x, Eigen::VectorXd* solved) const;

  const SensingModel* model_;
  std::vector<int> chosen_;
  std::vector<double> gains_;
  std::vector<char> member_;
  Eigen::MatrixXd chol_;  // lower triangular, |S| x |S|
  double mi_ = 0.0;
};

}  // namespace arraydesign
