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

#include "arraydesign/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "arraydesign/objective.hpp"

namespace arraydesign {
namespace {

double tie_threshold(double round_max) {
  return round_max - kTieRelTol * std::abs(round_max);
}

// Deterministic preference among tied candidates: centermost position
// first, the negative of a symmetric pair next, index as the last resort.
struct TieKey {
  double abs_pos;
  double pos;
  int index;

  bool operator<(const TieKey& other) const {
    if (abs_pos != other.abs_pos) return abs_pos < other.abs_pos;
    if (pos != other.pos) return pos < other.pos;
    return index < other.index;
  }
};

TieKey tie_key(const SensingModel& model, int x) {
  const double p = model.grid().positions[static_cast<std::size_t>(x)];
  return {std::abs(p), p, x};
}

void record_pick(Design* design, const SensingModel& model,
                 const SelectionState& state) {
  design->chosen_indices = state.chosen();
  design->gains = state.gains();
  design->mi_nats = state.mi_nats();
  design->chosen_positions.clear();
  for (int x : design->chosen_indices)
    design->chosen_positions.push_back(
        model.grid().positions[static_cast<std::size_t>(x)]);
}

std::string uniform_descriptor(int budget) {
  std::ostringstream out;
  out << "uniform(N=" << budget << ")";
  return out.str();
}

unsigned long long binomial_guarded(int n, int k, unsigned long long limit) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long value = 1;
  for (int i = 1; i <= k; ++i) {
    // value fits the limit check before overflow: limit * n stays < 2^63
    // for the guarded range.
    value = value * static_cast<unsigned long long>(n - k + i) /
            static_cast<unsigned long long>(i);
    if (value > limit) return limit + 1;
  }
  return value;
}

}  // namespace

Design greedy(const SensingModel& model, int budget) {
  const int n = model.grid().size();
  if (budget < 0 || budget > n)
    throw std::invalid_argument("optimizer: budget must lie in [0, grid size]");

  Design design;
  design.budget = budget;
  design.solver = "greedy";
  design.constraint = uniform_descriptor(budget);

  SelectionState state(model);
  for (int round = 0; round < budget; ++round) {
    double round_max = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> gains;
    gains.reserve(static_cast<std::size_t>(n - round));
    for (int x = 0; x < n; ++x) {
      if (state.contains(x)) continue;
      const double g = state.marginal_gain(x);
      ++design.gain_evaluations;
      gains.emplace_back(x, g);
      round_max = std::max(round_max, g);
    }

    const double threshold = tie_threshold(round_max);
    int best = -1;
    TieKey best_key{0.0, 0.0, -1};
    for (const auto& [x, g] : gains) {
      if (g < threshold) continue;
      const TieKey key = tie_key(model, x);
      if (best < 0 || key < best_key) {
        best = x;
        best_key = key;
      }
    }
    state = state.extended(best);
  }

  record_pick(&design, model, state);
  return design;
}

Design lazy_greedy(const SensingModel& model, int budget) {
  const int n = model.grid().size();
  if (budget < 0 || budget > n)
    throw std::invalid_argument("optimizer: budget must lie in [0, grid size]");

  Design design;
  design.budget = budget;
  design.solver = "lazy";
  design.constraint = uniform_descriptor(budget);
  if (budget == 0) return design;

  SelectionState state(model);

  // bound[x] upper-bounds the current marginal gain of x (fresh when
  // last_round[x] == round). The heap may hold superseded entries; an
  // entry is live while its value matches bound[x].
  std::vector<double> bound(static_cast<std::size_t>(n));
  std::vector<int> last_round(static_cast<std::size_t>(n), 0);
  std::priority_queue<std::pair<double, int>> heap;
  for (int x = 0; x < n; ++x) {
    bound[static_cast<std::size_t>(x)] = state.marginal_gain(x);
    ++design.gain_evaluations;
    heap.emplace(bound[static_cast<std::size_t>(x)], x);
  }

  std::vector<int> tie_pool;
  std::vector<int> pool_round(static_cast<std::size_t>(n), -1);
  for (int round = 0; round < budget; ++round) {
    auto refresh = [&](int x) {
      const double g = state.marginal_gain(x);
      ++design.gain_evaluations;
      design.max_stale_gap =
          std::max(design.max_stale_gap,
                   g - bound[static_cast<std::size_t>(x)]);
      bound[static_cast<std::size_t>(x)] = g;
      last_round[static_cast<std::size_t>(x)] = round;
      return g;
    };

    // Pop until the top entry is live and fresh; stale entries get their
    // gain recomputed and requeued.
    double round_max;
    while (true) {
      const auto [value, x] = heap.top();
      if (state.contains(x) || value != bound[static_cast<std::size_t>(x)]) {
        heap.pop();
        continue;
      }
      if (last_round[static_cast<std::size_t>(x)] == round) {
        round_max = value;
        break;
      }
      heap.pop();
      heap.emplace(refresh(x), x);
    }

    // Everything whose upper bound reaches the tie window gets refreshed
    // so the tie set matches what a full scan would see. Refreshing can
    // raise round_max by rounding noise, in which case the loop widens.
    tie_pool.clear();
    double threshold = tie_threshold(round_max);
    while (!heap.empty()) {
      const auto [value, x] = heap.top();
      if (state.contains(x) || value != bound[static_cast<std::size_t>(x)]) {
        heap.pop();
        continue;
      }
      if (value < threshold) break;
      heap.pop();
      // A refresh that leaves the gain bit-identical keeps the old heap
      // entry live; the stamp stops such duplicates from re-entering.
      if (pool_round[static_cast<std::size_t>(x)] == round) continue;
      double g = value;
      if (last_round[static_cast<std::size_t>(x)] != round) g = refresh(x);
      tie_pool.push_back(x);
      pool_round[static_cast<std::size_t>(x)] = round;
      if (g > round_max) {
        round_max = g;
        threshold = tie_threshold(round_max);
      }
    }

    int best = -1;
    TieKey best_key{0.0, 0.0, -1};
    for (int x : tie_pool) {
      if (bound[static_cast<std::size_t>(x)] < threshold) continue;
      const TieKey key = tie_key(model, x);
      if (best < 0 || key < best_key) {
        best = x;
        best_key = key;
      }
    }

    for (int x : tie_pool)
      if (x != best) heap.emplace(bound[static_cast<std::size_t>(x)], x);
    state = state.extended(best);
  }

  record_pick(&design, model, state);
  return design;
}

Design matroid_greedy(const SensingModel& model, const MatroidSpec& matroid) {
  const int n = model.grid().size();
  if (matroid.ground_size != n)
    throw std::invalid_argument(
        "optimizer: matroid ground set must match the grid");

  Design design;
  design.budget = matroid.global_cap;
  design.solver = "greedy";
  {
    std::ostringstream out;
    if (matroid.kind == MatroidSpec::Kind::kUniform) {
      out << "uniform(N=" << matroid.global_cap << ")";
    } else {
      out << "partition(bins=" << matroid.bin_count()
          << ";global_cap=" << matroid.global_cap << ")";
    }
    design.constraint = out.str();
  }

  SelectionState state(model);
  std::vector<int> bin_counts(matroid.caps.size(), 0);
  int total = 0;

  while (total < matroid.global_cap) {
    double round_max = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> gains;
    for (int x = 0; x < n; ++x) {
      if (state.contains(x)) continue;
      if (matroid.kind == MatroidSpec::Kind::kPartition) {
        const int b = matroid.bin_of[static_cast<std::size_t>(x)];
        if (bin_counts[static_cast<std::size_t>(b)] >=
            matroid.caps[static_cast<std::size_t>(b)])
          continue;
      }
      const double g = state.marginal_gain(x);
      ++design.gain_evaluations;
      gains.emplace_back(x, g);
      round_max = std::max(round_max, g);
    }
    if (gains.empty()) break;

    const double threshold = tie_threshold(round_max);
    int best = -1;
    TieKey best_key{0.0, 0.0, -1};
    for (const auto& [x, g] : gains) {
      if (g < threshold) continue;
      const TieKey key = tie_key(model, x);
      if (best < 0 || key < best_key) {
        best = x;
        best_key = key;
      }
    }

    state = state.extended(best);
    ++total;
    if (matroid.kind == MatroidSpec::Kind::kPartition) {
      const int b = matroid.bin_of[static_cast<std::size_t>(best)];
      ++bin_counts[static_cast<std::size_t>(b)];
    }
  }

  record_pick(&design, model, state);
  return design;
}

Design exhaustive_opt(const SensingModel& model, int budget) {
  const int n = model.grid().size();
  if (budget < 0 || budget > n)
    throw std::invalid_argument("optimizer: budget must lie in [0, grid size]");
  constexpr unsigned long long kMaxSubsets = 2'000'000;
  if (binomial_guarded(n, budget, kMaxSubsets) > kMaxSubsets)
    throw std::invalid_argument(
        "optimizer: exhaustive search over more than 2e6 subsets refused");

  Design design;
  design.budget = budget;
  design.solver = "exhaustive";
  design.constraint = uniform_descriptor(budget);
  if (budget == 0) return design;

  std::vector<int> subset(static_cast<std::size_t>(budget));
  for (int i = 0; i < budget; ++i) subset[static_cast<std::size_t>(i)] = i;

  std::vector<int> best_subset;
  double best_mi = -std::numeric_limits<double>::infinity();
  while (true) {
    const double mi = mutual_information(model, subset);
    ++design.gain_evaluations;
    if (mi > best_mi) {
      best_mi = mi;
      best_subset = subset;
    }

    // Next lexicographic combination.
    int i = budget - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - budget + i)
      --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < budget; ++j)
      subset[static_cast<std::size_t>(j)] =
          subset[static_cast<std::size_t>(j - 1)] + 1;
  }

  // Report per-step gains along the winning subset in index order.
  SelectionState state(model);
  for (int x : best_subset) state = state.extended(x);
  record_pick(&design, model, state);
  return design;
}

double nemhauser_bound(double greedy_mi_nats) {
  if (!(greedy_mi_nats >= 0.0))
    throw std::invalid_argument("optimizer: mi must be nonnegative");
  return greedy_mi_nats / (1.0 - std::exp(-1.0));
}

double online_bound(const SensingModel& model, const Design& design) {
  SelectionState state(model);
  for (int x : design.chosen_indices) state = state.extended(x);

  std::vector<double> gains;
  gains.reserve(static_cast<std::size_t>(model.grid().size()));
  for (int x = 0; x < model.grid().size(); ++x) {
    if (state.contains(x)) continue;
    // Exact gains are nonnegative; clamp out rounding noise.
    gains.push_back(std::max(0.0, state.marginal_gain(x)));
  }

  const std::size_t keep =
      std::min(gains.size(), static_cast<std::size_t>(std::max(design.budget, 0)));
  std::partial_sort(gains.begin(), gains.begin() + static_cast<long>(keep),
                    gains.end(), std::greater<double>());
  double sum = 0.0;
  for (std::size_t i = 0; i < keep; ++i) sum += gains[i];
  return state.mi_nats() + sum;
}

}  // namespace arraydesign
