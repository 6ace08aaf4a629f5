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

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "arraydesign/run_config.hpp"

namespace arraydesign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalError = 2;
inline constexpr int kExitVerifyFailure = 3;

/// Runs the configured solver at every snr_db entry and writes one
/// design_snr<v>.csv per entry into out_dir (selection table plus a
/// metadata footer with the certificate values). Prints a one-line summary
/// per design to `out`.
int cmd_design(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& out);

/// Recomputes the certificate for a previously written design file and
/// writes bounds.csv next to it. The design file must carry the same
/// config hash as `config`.
int cmd_bounds(const RunConfig& config,
               const std::filesystem::path& design_file,
               const std::filesystem::path& out_dir, std::ostream& out);

/// Paired Monte-Carlo cross table over the given design files; writes
/// mse.csv into out_dir.
int cmd_mc(const RunConfig& config,
           const std::vector<std::filesystem::path>& design_files,
           const std::filesystem::path& out_dir, int threads,
           std::ostream& out);

/// Self-check suites at reduced scale; prints one
/// `suite,cases,failures,worst_margin` line per suite. Returns
/// kExitVerifyFailure when any suite fails.
int cmd_verify(const RunConfig& config, std::ostream& out);

}  // namespace arraydesign
