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

#include "arraydesign/matroid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace arraydesign {
namespace {

void check_element(const MatroidSpec& matroid, int x) {
  if (x < 0 || x >= matroid.ground_size)
    throw std::out_of_range("matroid: element outside the ground set");
}

}  // namespace

MatroidSpec uniform_matroid(int ground_size, int budget) {
  if (ground_size < 0)
    throw std::invalid_argument("matroid: ground_size must be >= 0");
  if (budget < 0) throw std::invalid_argument("matroid: budget must be >= 0");
  MatroidSpec matroid;
  matroid.kind = MatroidSpec::Kind::kUniform;
  matroid.ground_size = ground_size;
  matroid.global_cap = budget;
  return matroid;
}

MatroidSpec partition_matroid(int ground_size,
                              std::vector<std::vector<int>> bins,
                              std::vector<int> caps, int global_cap) {
  if (ground_size < 0)
    throw std::invalid_argument("matroid: ground_size must be >= 0");
  if (caps.size() != bins.size())
    throw std::invalid_argument("matroid: need one cap per bin");
  if (global_cap < 0)
    throw std::invalid_argument("matroid: global_cap must be >= 0");
  for (int cap : caps)
    if (cap < 0) throw std::invalid_argument("matroid: caps must be >= 0");

  std::vector<int> bin_of(static_cast<std::size_t>(ground_size), -1);
  for (std::size_t j = 0; j < bins.size(); ++j) {
    for (int x : bins[j]) {
      if (x < 0 || x >= ground_size)
        throw std::invalid_argument("matroid: bin member outside ground set");
      if (bin_of[static_cast<std::size_t>(x)] != -1)
        throw std::invalid_argument("matroid: bins must be disjoint");
      bin_of[static_cast<std::size_t>(x)] = static_cast<int>(j);
    }
  }
  for (int b : bin_of)
    if (b == -1)
      throw std::invalid_argument("matroid: bins must cover the ground set");

  MatroidSpec matroid;
  matroid.kind = MatroidSpec::Kind::kPartition;
  matroid.ground_size = ground_size;
  matroid.global_cap = global_cap;
  matroid.bins = std::move(bins);
  matroid.caps = std::move(caps);
  matroid.bin_of = std::move(bin_of);
  return matroid;
}

MatroidSpec partition_from_bins(const CandidateGrid& grid, double bin_width,
                                double offset, std::vector<int> caps,
                                int global_cap) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw std::invalid_argument("matroid: bin_width must be positive");
  if (!std::isfinite(offset))
    throw std::invalid_argument("matroid: offset must be finite");

  // Cell j holds positions in [offset + j*w, offset + (j+1)*w).
  std::map<long long, std::vector<int>> cells;
  for (int i = 0; i < grid.size(); ++i) {
    const double p = grid.positions[static_cast<std::size_t>(i)];
    const long long j =
        static_cast<long long>(std::floor((p - offset) / bin_width));
    cells[j].push_back(i);
  }

  std::vector<std::vector<int>> bins;
  bins.reserve(cells.size());
  for (auto& [j, members] : cells) bins.push_back(std::move(members));

  if (caps.empty())
    throw std::invalid_argument("matroid: caps must be nonempty");
  if (caps.size() == 1) caps.assign(bins.size(), caps[0]);
  if (caps.size() != bins.size())
    throw std::invalid_argument(
        "matroid: need one cap per nonempty bin (or a single broadcast cap)");
  return partition_matroid(grid.size(), std::move(bins), std::move(caps),
                           global_cap);
}

MatroidSpec partition_from_bins(const CandidateGrid& grid, double bin_width,
                                double offset, int cap_per_bin,
                                int global_cap) {
  return partition_from_bins(grid, bin_width, offset,
                             std::vector<int>{cap_per_bin}, global_cap);
}

bool is_independent(const MatroidSpec& matroid, std::span<const int> s) {
  std::vector<char> seen(static_cast<std::size_t>(matroid.ground_size), 0);
  std::vector<int> bin_counts(matroid.caps.size(), 0);
  int total = 0;
  for (int x : s) {
    check_element(matroid, x);
    if (seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("matroid: duplicate element");
    seen[static_cast<std::size_t>(x)] = 1;
    ++total;
    if (matroid.kind == MatroidSpec::Kind::kPartition) {
      const int b = matroid.bin_of[static_cast<std::size_t>(x)];
      if (++bin_counts[static_cast<std::size_t>(b)] >
          matroid.caps[static_cast<std::size_t>(b)])
        return false;
    }
  }
  return total <= matroid.global_cap;
}

bool can_extend(const MatroidSpec& matroid, std::span<const int> s, int x) {
  check_element(matroid, x);
  if (std::find(s.begin(), s.end(), x) != s.end()) return false;

  int total = 1;
  int same_bin = 1;
  const int xbin = matroid.kind == MatroidSpec::Kind::kPartition
                       ? matroid.bin_of[static_cast<std::size_t>(x)]
                       : -1;
  for (int y : s) {
    check_element(matroid, y);
    ++total;
    if (matroid.kind == MatroidSpec::Kind::kPartition &&
        matroid.bin_of[static_cast<std::size_t>(y)] == xbin)
      ++same_bin;
  }
  if (total > matroid.global_cap) return false;
  if (matroid.kind == MatroidSpec::Kind::kPartition &&
      same_bin > matroid.caps[static_cast<std::size_t>(xbin)])
    return false;
  return true;
}

}  // namespace arraydesign
