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

#include <span>
#include <vector>

#include "arraydesign/grid.hpp"

namespace arraydesign {

/// Independence system over candidate indices 0 .. ground_size-1. Either a
/// uniform matroid (|S| <= global_cap) or a partition matroid intersected
/// with a global cardinality cap (|S ∩ bin_j| <= caps[j] and
/// |S| <= global_cap).
struct MatroidSpec {
  enum class Kind { kUniform, kPartition };

  Kind kind = Kind::kUniform;
  int ground_size = 0;
  int global_cap = 0;

  // Partition data. bins[j] lists the members of bin j (disjoint, covering
  // the ground set); bin_of[i] is the bin of element i; caps[j] its cap.
  std::vector<std::vector<int>> bins;
  std::vector<int> caps;
  std::vector<int> bin_of;

  int bin_count() const { return static_cast<int>(bins.size()); }
};

MatroidSpec uniform_matroid(int ground_size, int budget);

/// Explicit partition matroid. Throws std::invalid_argument unless `bins`
/// are disjoint, cover 0..ground_size-1, and |caps| == |bins| with all
/// caps and global_cap >= 0.
MatroidSpec partition_matroid(int ground_size,
                              std::vector<std::vector<int>> bins,
                              std::vector<int> caps, int global_cap);

/// Buckets grid positions into half-open cells
/// [offset + j*bin_width, offset + (j+1)*bin_width); empty cells are
/// dropped and `cap_per_bin` applies to every nonempty cell. Bins are
/// ordered by cell index.
MatroidSpec partition_from_bins(const CandidateGrid& grid, double bin_width,
                                double offset, int cap_per_bin,
                                int global_cap);

/// Same, with explicit per-nonempty-bin caps (ordered by cell index).
/// Throws std::invalid_argument when |caps| != number of nonempty cells.
MatroidSpec partition_from_bins(const CandidateGrid& grid, double bin_width,
                                double offset, std::vector<int> caps,
                                int global_cap);

/// Membership test for the independence family. Duplicate indices throw
/// std::invalid_argument; out-of-range indices throw std::out_of_range.
bool is_independent(const MatroidSpec& matroid, std::span<const int> s);

/// Equivalent to is_independent(matroid, S + x) for x not in S; returns
/// false when x is already a member.
bool can_extend(const MatroidSpec& matroid, std::span<const int> s, int x);

}  // namespace arraydesign
