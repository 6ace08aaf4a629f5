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

#include "arraydesign/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "arraydesign/bayes.hpp"
#include "arraydesign/model.hpp"
#include "arraydesign/objective.hpp"
#include "arraydesign/optimizer.hpp"
#include "arraydesign/rng.hpp"

namespace arraydesign {
namespace {

struct Suite {
  VerifySuiteResult result;
  double tolerance;

  Suite(const std::string& name, double tol) : tolerance(tol) {
    result.suite = name;
    result.worst_margin = std::numeric_limits<double>::infinity();
  }

  void record(double margin) {
    ++result.cases;
    result.worst_margin = std::min(result.worst_margin, margin);
    if (margin < -tolerance) ++result.failures;
  }

  VerifySuiteResult finish() {
    if (result.cases == 0) result.worst_margin = 0.0;
    return result;
  }
};

int pick(RngStream& rng, int n) {
  return std::min(n - 1, static_cast<int>(rng.next_double() * double(n)));
}

std::vector<int> random_subset(RngStream& rng, int n, int max_size) {
  const int size = pick(rng, std::min(max_size, n) + 1);
  std::vector<int> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < size; ++i)
    std::swap(all[static_cast<std::size_t>(i)],
              all[static_cast<std::size_t>(i + pick(rng, n - i))]);
  all.resize(static_cast<std::size_t>(size));
  return all;
}

SelectionState state_for(const SensingModel& model,
                         const std::vector<int>& subset) {
  SelectionState state(model);
  for (int x : subset) state = state.extended(x);
  return state;
}

// Shrunken instance: same physics, at most 17 candidates and 80 retained
// modes, so enumeration-based suites stay fast.
SensingModel reduced_model(const RunConfig& config) {
  const double center = 0.5 * (config.aperture_min + config.aperture_max);
  const double half =
      std::min(0.5 * (config.aperture_max - config.aperture_min), 1.0);
  const double delta = 2.0 * half / 16.0;
  const CandidateGrid grid =
      make_uniform_grid(center - half, center + half, delta);
  const PriorSpec prior =
      build_prior(config.prior_r, config.prior_total_power,
                  std::min(config.prior_m_half, 80));
  return build_model(config.lambda, config.snr_db.front(),
                     std::max(1, std::min(config.budget, 3)), grid, prior);
}

VerifySuiteResult check_monotonicity(const SensingModel& model,
                                     RngStream& rng) {
  Suite suite("monotonicity", 1e-12);
  const int n = model.grid().size();
  for (int c = 0; c < 200; ++c) {
    const std::vector<int> subset = random_subset(rng, n, 6);
    const SelectionState state = state_for(model, subset);
    int x = pick(rng, n);
    while (state.contains(x)) x = (x + 1) % n;
    suite.record(state.marginal_gain(x));
  }
  return suite.finish();
}

VerifySuiteResult check_submodularity(const SensingModel& model,
                                      RngStream& rng) {
  Suite suite("submodularity", 1e-10);
  const int n = model.grid().size();
  for (int c = 0; c < 200; ++c) {
    const std::vector<int> larger = random_subset(rng, n, 8);
    std::vector<int> smaller = larger;
    if (!smaller.empty()) smaller.resize(smaller.size() / 2);
    int x = pick(rng, n);
    while (std::find(larger.begin(), larger.end(), x) != larger.end())
      x = (x + 1) % n;
    const double gain_small = state_for(model, smaller).marginal_gain(x);
    const double gain_large = state_for(model, larger).marginal_gain(x);
    suite.record(gain_small - gain_large);
  }
  return suite.finish();
}

VerifySuiteResult check_incremental(const SensingModel& model,
                                    RngStream& rng) {
  Suite suite("incremental_consistency", 0.0);
  const int n = model.grid().size();
  for (int c = 0; c < 50; ++c) {
    const std::vector<int> subset = random_subset(rng, n, 8);
    const double incremental = state_for(model, subset).mi_nats();
    const double scratch = mutual_information(model, subset);
    const double rel =
        std::abs(incremental - scratch) / std::max(1.0, std::abs(scratch));
    suite.record(1e-8 - rel);
  }
  return suite.finish();
}

struct EnumInstances {
  std::vector<SensingModel> models;
  std::vector<Design> greedy_designs;
  std::vector<Design> optimal_designs;
};

EnumInstances build_enum_instances(const SensingModel& base, RngStream& rng) {
  EnumInstances out;
  for (int c = 0; c < 5; ++c) {
    const std::vector<int> keep =
        random_subset(rng, base.grid().size(), 10);
    if (keep.size() < 4) continue;
    CandidateGrid grid;
    grid.delta = base.grid().delta;
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    for (int x : sorted)
      grid.positions.push_back(
          base.grid().positions[static_cast<std::size_t>(x)]);
    grid.aperture_min = grid.positions.front();
    grid.aperture_max = grid.positions.back();

    const double snr_db = 20.0 * rng.next_double();
    const SensingModel model =
        build_model(base.lambda(), snr_db, base.budget_ref(), grid,
                    base.prior());
    const int budget = 2 + pick(rng, 2);
    out.greedy_designs.push_back(greedy(model, budget));
    out.optimal_designs.push_back(exhaustive_opt(model, budget));
    out.models.push_back(model);
  }
  return out;
}

VerifySuiteResult check_greedy_ratio(const EnumInstances& instances) {
  Suite suite("greedy_ratio", 1e-9);
  const double ratio = 1.0 - std::exp(-1.0);
  for (std::size_t i = 0; i < instances.models.size(); ++i)
    suite.record(instances.greedy_designs[i].mi_nats -
                 ratio * instances.optimal_designs[i].mi_nats);
  return suite.finish();
}

VerifySuiteResult check_online_certificate(const EnumInstances& instances) {
  Suite suite("online_certificate", 1e-9);
  for (std::size_t i = 0; i < instances.models.size(); ++i) {
    const double bound =
        online_bound(instances.models[i], instances.greedy_designs[i]);
    suite.record(bound - instances.optimal_designs[i].mi_nats);
  }
  return suite.finish();
}

VerifySuiteResult check_matroid_axioms(RngStream& rng) {
  Suite suite("matroid_axioms", 0.0);
  for (int round = 0; round < 3; ++round) {
    const int ground = 8 + pick(rng, 2);
    const int bin_count = 2 + pick(rng, 3);
    std::vector<std::vector<int>> bins(static_cast<std::size_t>(bin_count));
    for (int x = 0; x < ground; ++x)
      bins[static_cast<std::size_t>(
              x < bin_count ? x : pick(rng, bin_count))]
          .push_back(x);
    std::vector<int> caps;
    for (int j = 0; j < bin_count; ++j) caps.push_back(1 + pick(rng, 2));
    const MatroidSpec matroid = partition_matroid(
        ground, std::move(bins), std::move(caps), 3 + pick(rng, 3));

    std::vector<unsigned> independent;
    std::vector<int> scratch;
    for (unsigned mask = 0; mask < (1u << ground); ++mask) {
      scratch.clear();
      for (int x = 0; x < ground; ++x)
        if (mask & (1u << x)) scratch.push_back(x);
      if (is_independent(matroid, scratch)) independent.push_back(mask);
    }

    // Downward closure: dropping any one element stays independent.
    for (unsigned mask : independent) {
      for (int x = 0; x < ground; ++x) {
        if (!(mask & (1u << x))) continue;
        const unsigned smaller = mask & ~(1u << x);
        const bool ok = std::binary_search(independent.begin(),
                                           independent.end(), smaller);
        suite.record(ok ? 1.0 : -1.0);
      }
    }

    // Exchange: a larger independent set lends some element.
    for (unsigned x_mask : independent) {
      const int x_size = std::popcount(x_mask);
      for (unsigned y_mask : independent) {
        if (std::popcount(y_mask) <= x_size) continue;
        bool found = false;
        for (int e = 0; e < ground && !found; ++e) {
          if (!(y_mask & (1u << e)) || (x_mask & (1u << e))) continue;
          found = std::binary_search(independent.begin(), independent.end(),
                                     x_mask | (1u << e));
        }
        suite.record(found ? 1.0 : -1.0);
      }
    }
  }
  return suite.finish();
}

VerifySuiteResult check_posterior(const SensingModel& model, RngStream& rng) {
  Suite suite("posterior_consistency", 0.0);
  const int n = model.grid().size();
  double prior_logdet = 0.0;
  double prior_trace = 0.0;
  for (double v : model.prior().variances) {
    prior_logdet += std::log(v);
    prior_trace += v;
  }
  for (int c = 0; c < 30; ++c) {
    const std::vector<int> sensors = random_subset(rng, n, 5);
    const SceneSample scene = sample_scene(model.prior(), rng);
    const Eigen::VectorXcd measurements =
        simulate_measurements(model, sensors, scene, rng);
    const PosteriorResult post = posterior(model, sensors, measurements);

    const double expected_logdet =
        prior_logdet - mutual_information(model, sensors);
    const double rel = std::abs(post.logdet_cov - expected_logdet) /
                       std::max(1.0, std::abs(expected_logdet));
    suite.record(1e-8 - rel);
    suite.record(prior_trace + 1e-10 - post.trace_cov);
  }
  return suite.finish();
}

}  // namespace

std::vector<VerifySuiteResult> run_verify_suites(const RunConfig& config) {
  const SensingModel model = reduced_model(config);
  RngStream rng(config.seed, 0x7e5fULL);

  std::vector<VerifySuiteResult> results;
  results.push_back(check_monotonicity(model, rng));
  results.push_back(check_submodularity(model, rng));
  results.push_back(check_incremental(model, rng));
  const EnumInstances instances = build_enum_instances(model, rng);
  results.push_back(check_greedy_ratio(instances));
  results.push_back(check_online_certificate(instances));
  results.push_back(check_matroid_axioms(rng));
  results.push_back(check_posterior(model, rng));
  return results;
}

}  // namespace arraydesign
