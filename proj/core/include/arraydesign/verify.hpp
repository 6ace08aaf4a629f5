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

#include "arraydesign/run_config.hpp"

namespace arraydesign {

/// Outcome of one self-check suite. worst_margin is the smallest slack
/// observed against the suite's inequality (negative beyond tolerance
/// means failure).
struct VerifySuiteResult {
  std::string suite;
  long long cases = 0;
  long long failures = 0;
  double worst_margin = 0.0;
};

/// Randomized self-checks of the library's structural guarantees
/// (monotone gains, diminishing returns, incremental-vs-batch agreement,
/// greedy approximation ratio against enumeration, certificate validity,
/// matroid axioms, posterior identities) on a reduced-scale instance
/// derived from `config`. Deterministic given config.seed.
std::vector<VerifySuiteResult> run_verify_suites(const RunConfig& config);

}  // namespace arraydesign
