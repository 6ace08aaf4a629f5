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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "arraydesign/grid.hpp"
#include "arraydesign/matroid.hpp"

namespace arraydesign {

enum class SolverKind { kGreedy, kLazy, kExhaustive };

/// Selection constraint as configured. For partitions, `caps` holds either
/// one broadcast value (caps_broadcast) or one cap per nonempty bin.
struct ConstraintConfig {
  enum class Kind { kUniform, kPartition };
  Kind kind = Kind::kUniform;
  double bin_width = 0.0;
  double offset = 0.0;
  bool caps_broadcast = true;
  std::vector<int> caps;
  std::optional<int> global_cap;  // defaults to the budget
};

/// Validated run description, loaded from a JSON file. Unknown keys
/// anywhere in the document are rejected; every numeric field is checked
/// for finiteness and range at parse time.
struct RunConfig {
  double lambda = 1.0;
  double aperture_min = 0.0;
  double aperture_max = 0.0;
  double grid_delta = 0.0;
  int budget = 0;

  int prior_r = 1;
  double prior_total_power = 1.0;
  int prior_m_half = 1;

  std::vector<double> snr_db;
  ConstraintConfig constraint;
  SolverKind solver = SolverKind::kGreedy;

  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<double> eval_snrs_db;
  std::optional<double> inject_epsilon;
  std::string output_dir = ".";

  /// FNV-1a of the canonical JSON dump plus the tool version; stamped into
  /// every artifact so downstream commands can refuse mismatched inputs.
  std::string config_hash;
};

/// Parses and validates a JSON document. Throws config_error with a
/// key-path diagnostic on any violation.
RunConfig parse_run_config(const std::string& json_text);

/// Reads the file and delegates to parse_run_config.
RunConfig load_run_config(const std::filesystem::path& path);

/// Grid and matroid implied by the config.
CandidateGrid config_grid(const RunConfig& config);
MatroidSpec config_matroid(const RunConfig& config, const CandidateGrid& grid);

const char* solver_name(SolverKind kind);

}  // namespace arraydesign
