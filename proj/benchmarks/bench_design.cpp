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

#include <benchmark/benchmark.h>

#include <vector>

#include "arraydesign/bayes.hpp"
#include "arraydesign/model.hpp"
#include "arraydesign/objective.hpp"
#include "arraydesign/optimizer.hpp"
#include "arraydesign/rng.hpp"

namespace {

using namespace arraydesign;

// Reference workload: 113 candidates, 901 retained modes, budget 11.
const SensingModel& reference_model() {
  static const SensingModel model = build_model(
      1.0, 12.0, 11, make_uniform_grid(-3.5, 3.5, 0.0625),
      build_prior(1, 1.0, 450));
  return model;
}

void BM_BuildModel(benchmark::State& state) {
  const CandidateGrid grid = make_uniform_grid(-3.5, 3.5, 0.0625);
  const PriorSpec prior = build_prior(1, 1.0, 450);
  for (auto _ : state) {
    SensingModel model = build_model(1.0, 12.0, 11, grid, prior);
    benchmark::DoNotOptimize(model.signal_cov());
  }
}
BENCHMARK(BM_BuildModel)->Unit(benchmark::kMillisecond);

void BM_MarginalGainSweep(benchmark::State& state) {
  const SensingModel& model = reference_model();
  SelectionState selection(model);
  for (int x : {16, 40, 64, 88, 56}) selection = selection.extended(x);
  for (auto _ : state) {
    double acc = 0.0;
    for (int x = 0; x < model.grid().size(); ++x) {
      if (!selection.contains(x)) acc += selection.marginal_gain(x);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_MarginalGainSweep)->Unit(benchmark::kMicrosecond);

void BM_Greedy(benchmark::State& state) {
  const SensingModel& model = reference_model();
  for (auto _ : state) {
    Design design = greedy(model, 11);
    benchmark::DoNotOptimize(design.mi_nats);
  }
}
BENCHMARK(BM_Greedy)->Unit(benchmark::kMillisecond);

void BM_LazyGreedy(benchmark::State& state) {
  const SensingModel& model = reference_model();
  for (auto _ : state) {
    Design design = lazy_greedy(model, 11);
    benchmark::DoNotOptimize(design.mi_nats);
  }
}
BENCHMARK(BM_LazyGreedy)->Unit(benchmark::kMillisecond);

void BM_PosteriorUpdate(benchmark::State& state) {
  const SensingModel& model = reference_model();
  const Design design = greedy(model, 11);
  RngStream rng(1);
  const SceneSample scene = sample_scene(model.prior(), rng);
  const Eigen::VectorXcd meas =
      simulate_measurements(model, design.chosen_indices, scene, rng);
  for (auto _ : state) {
    PosteriorResult post = posterior(model, design.chosen_indices, meas);
    benchmark::DoNotOptimize(post.trace_cov);
  }
}
BENCHMARK(BM_PosteriorUpdate)->Unit(benchmark::kMillisecond);

void BM_McMse(benchmark::State& state) {
  const SensingModel& model = reference_model();
  const Design design = greedy(model, 11);
  std::vector<McDesign> entries(1);
  entries[0].label = "reference";
  entries[0].target_snr_db = 12.0;
  entries[0].indices = design.chosen_indices;
  const std::vector<double> evals = {12.0};
  const int trials = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto table = mc_mse(model, entries, evals, trials, 7, 1);
    benchmark::DoNotOptimize(table.front().mean_mse);
  }
}
BENCHMARK(BM_McMse)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
