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

#include <string>
#include <vector>

#include "arraydesign/matroid.hpp"
#include "arraydesign/model.hpp"

namespace arraydesign {

/// Result of a selection run. chosen_indices/positions/gains are in
/// selection order (for the exhaustive solver, ascending index order).
struct Design {
  std::vector<int> chosen_indices;
  std::vector<double> chosen_positions;
  std::vector<double> gains;
  double mi_nats = 0.0;
  /// Cardinality budget (uniform) or global cap (partition).
  int budget = 0;
  std::string solver;
  std::string constraint;
  /// Number of marginal-gain evaluations spent by the solver.
  long long gain_evaluations = 0;
  /// Lazy solver diagnostic: max over refreshes of (fresh gain - stale
  /// upper bound). Submodularity keeps this at rounding level; eager
  /// solvers report 0.
  double max_stale_gap = 0.0;
};

/// Ties are broken deterministically: among candidates whose gains are
/// within 1e-12 relative of the round maximum, pick the smallest
/// |position|, then the negative of a symmetric pair, then the smallest
/// index.
inline constexpr double kTieRelTol = 1e-12;

/// Plain greedy under a cardinality budget: N rounds, each scanning every
/// unchosen candidate. Requires 0 <= budget <= grid size.
Design greedy(const SensingModel& model, int budget);

/// Greedy with stale-upper-bound pruning. Produces the identical selection
/// sequence as greedy() (the tie set is always refreshed before picking)
/// with far fewer gain evaluations after the first round.
Design lazy_greedy(const SensingModel& model, int budget);

/// Greedy restricted to feasible extensions of the matroid; stops when no
/// candidate can be added. Requires matroid.ground_size == grid size.
Design matroid_greedy(const SensingModel& model, const MatroidSpec& matroid);

/// Exact optimum over all subsets of the given size, by enumeration.
/// Guarded: throws std::invalid_argument when C(grid size, budget) exceeds
/// 2e6 subsets.
Design exhaustive_opt(const SensingModel& model, int budget);

/// Data-independent approximation certificate: OPT <= mi / (1 - 1/e).
double nemhauser_bound(double greedy_mi_nats);

/// Data-dependent certificate: OPT <= G(S) + sum of the `budget` largest
/// marginal gains outside S, evaluated at the final state.
double online_bound(const SensingModel& model, const Design& design);

}  // namespace arraydesign
