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

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <set>
#include <vector>

#include "arraydesign/matroid.hpp"
#include "arraydesign/model.hpp"
#include "arraydesign/rng.hpp"

using namespace arraydesign;

namespace {

std::vector<int> mask_to_set(unsigned mask, int ground) {
  std::vector<int> out;
  for (int x = 0; x < ground; ++x)
    if (mask & (1u << x)) out.push_back(x);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("matroid");

TEST_CASE("uniform matroid counts cardinality") {
  const MatroidSpec matroid = uniform_matroid(10, 3);
  CHECK(is_independent(matroid, std::vector<int>{}));
  CHECK(is_independent(matroid, std::vector<int>{0, 5, 9}));
  CHECK_FALSE(is_independent(matroid, std::vector<int>{0, 1, 2, 3}));
  CHECK(can_extend(matroid, std::vector<int>{0, 1}, 2));
  CHECK_FALSE(can_extend(matroid, std::vector<int>{0, 1, 2}, 3));
  CHECK_FALSE(can_extend(matroid, std::vector<int>{0, 1}, 1));
  CHECK_THROWS_AS(is_independent(matroid, std::vector<int>{10}),
                  std::out_of_range);
  CHECK_THROWS_AS(is_independent(matroid, std::vector<int>{2, 2}),
                  std::invalid_argument);
}

TEST_CASE("partition matroid validation") {
  CHECK_THROWS_AS(partition_matroid(4, {{0, 1}, {1, 2, 3}}, {1, 1}, 4),
                  std::invalid_argument);  // overlap
  CHECK_THROWS_AS(partition_matroid(4, {{0, 1}}, {1}, 4),
                  std::invalid_argument);  // no cover
  CHECK_THROWS_AS(partition_matroid(4, {{0, 1}, {2, 3}}, {1}, 4),
                  std::invalid_argument);  // cap count
  CHECK_THROWS_AS(partition_matroid(4, {{0, 1}, {2, 3}}, {1, -1}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(partition_matroid(4, {{0, 1}, {2, 4}}, {1, 1}, 4),
                  std::invalid_argument);  // member out of range
}

TEST_CASE("partition independence respects bin caps and the global cap") {
  const MatroidSpec matroid =
      partition_matroid(6, {{0, 1, 2}, {3, 4}, {5}}, {2, 1, 1}, 3);
  CHECK(is_independent(matroid, std::vector<int>{0, 1, 3}));
  CHECK_FALSE(is_independent(matroid, std::vector<int>{0, 1, 2}));
  CHECK_FALSE(is_independent(matroid, std::vector<int>{3, 4}));
  CHECK_FALSE(is_independent(matroid, std::vector<int>{0, 1, 3, 5}));
  CHECK(can_extend(matroid, std::vector<int>{0, 3}, 5));
  CHECK_FALSE(can_extend(matroid, std::vector<int>{0, 3}, 4));
}

TEST_CASE("grid bucketing matches direct enumeration on the reference grid") {
  const CandidateGrid grid = make_uniform_grid(-3.5, 3.5, 0.0625);
  const MatroidSpec matroid = partition_from_bins(grid, 0.5, -0.25, 1, 11);

  // Oracle: floor((p + 0.25) / 0.5) per position, grouped.
  std::set<long long> cells;
  std::size_t covered = 0;
  for (double p : grid.positions)
    cells.insert(static_cast<long long>(std::floor((p + 0.25) / 0.5)));
  for (const auto& bin : matroid.bins) covered += bin.size();

  CHECK(matroid.bin_count() == static_cast<int>(cells.size()));
  CHECK(matroid.bin_count() == 15);
  CHECK(covered == grid.positions.size());
  CHECK(covered == 113);

  // Bins are disjoint and ordered left to right; edge bins are smaller.
  std::vector<int> seen(grid.positions.size(), 0);
  for (const auto& bin : matroid.bins)
    for (int x : bin) seen[static_cast<std::size_t>(x)] += 1;
  CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
  CHECK(matroid.bins.front().size() == 4);
  CHECK(matroid.bins.back().size() == 5);
  for (int j = 1; j < matroid.bin_count() - 1; ++j)
    CHECK(matroid.bins[static_cast<std::size_t>(j)].size() == 8);

  // One per bin: a same-bin pair is dependent, a cross-bin pair is not.
  CHECK_FALSE(is_independent(matroid, std::vector<int>{0, 1}));
  CHECK(is_independent(matroid, std::vector<int>{0, 8}));
}

TEST_CASE("bucket boundaries are half open") {
  CandidateGrid grid;
  grid.delta = 0.25;
  grid.positions = {0.0, 0.25, 0.5, 0.75};
  grid.aperture_min = 0.0;
  grid.aperture_max = 0.75;
  // Cells [_|-0.25..0.25|0.25..0.75|...): 0.25 lands in the second cell.
  const MatroidSpec matroid = partition_from_bins(grid, 0.5, -0.25, 2, 4);
  REQUIRE(matroid.bin_count() == 3);
  CHECK(matroid.bins[0] == std::vector<int>{0});
  CHECK(matroid.bins[1] == std::vector<int>{1, 2});
  CHECK(matroid.bins[2] == std::vector<int>{3});
}

TEST_CASE("single wide bin behaves like a uniform matroid") {
  const CandidateGrid grid = make_uniform_grid(-1.0, 1.0, 0.5);
  const MatroidSpec matroid = partition_from_bins(grid, 100.0, -50.0, 3, 3);
  REQUIRE(matroid.bin_count() == 1);
  const MatroidSpec uniform = uniform_matroid(grid.size(), 3);
  for (unsigned mask = 0; mask < (1u << grid.size()); ++mask) {
    const std::vector<int> s = mask_to_set(mask, grid.size());
    CHECK(is_independent(matroid, s) == is_independent(uniform, s));
  }
}

TEST_CASE("explicit caps must match the nonempty bins") {
  const CandidateGrid grid = make_uniform_grid(-1.0, 1.0, 0.5);
  const MatroidSpec ok =
      partition_from_bins(grid, 1.0, -1.0, std::vector<int>{1, 2, 1}, 4);
  CHECK(ok.bin_count() == 3);
  CHECK(ok.caps == std::vector<int>{1, 2, 1});
  CHECK_THROWS_AS(
      partition_from_bins(grid, 1.0, -1.0, std::vector<int>{1, 2}, 4),
      std::invalid_argument);
  CHECK_THROWS_AS(partition_from_bins(grid, 0.0, 0.0, 1, 4),
                  std::invalid_argument);
}

TEST_CASE("can_extend agrees with a fresh independence test") {
  RngStream rng(57, 8);
  for (int round = 0; round < 40; ++round) {
    const int ground = 6 + int(rng.next_double() * 4);
    const int bin_count = 2 + int(rng.next_double() * 3);
    std::vector<std::vector<int>> bins(static_cast<std::size_t>(bin_count));
    for (int x = 0; x < ground; ++x)
      bins[static_cast<std::size_t>(
              x < bin_count ? x : int(rng.next_double() * bin_count))]
          .push_back(x);
    std::vector<int> caps;
    for (int j = 0; j < bin_count; ++j)
      caps.push_back(1 + int(rng.next_double() * 2));
    const MatroidSpec matroid = partition_matroid(
        ground, std::move(bins), std::move(caps),
        2 + int(rng.next_double() * 3));

    for (unsigned mask = 0; mask < (1u << ground); ++mask) {
      const std::vector<int> s = mask_to_set(mask, ground);
      if (!is_independent(matroid, s)) continue;
      for (int x = 0; x < ground; ++x) {
        if (std::find(s.begin(), s.end(), x) != s.end()) continue;
        std::vector<int> extended = s;
        extended.push_back(x);
        CHECK(can_extend(matroid, s, x) == is_independent(matroid, extended));
      }
    }
  }
}

TEST_CASE("axioms hold by enumeration: closure and exchange") {
  RngStream rng(61, 9);
  for (int round = 0; round < 3; ++round) {
    const int ground = 8 + int(rng.next_double() * 2);
    const int bin_count = 2 + int(rng.next_double() * 3);
    std::vector<std::vector<int>> bins(static_cast<std::size_t>(bin_count));
    for (int x = 0; x < ground; ++x)
      bins[static_cast<std::size_t>(
              x < bin_count ? x : int(rng.next_double() * bin_count))]
          .push_back(x);
    std::vector<int> caps;
    for (int j = 0; j < bin_count; ++j)
      caps.push_back(1 + int(rng.next_double() * 2));
    const MatroidSpec matroid = partition_matroid(
        ground, std::move(bins), std::move(caps),
        3 + int(rng.next_double() * 3));

    std::vector<unsigned> family;
    for (unsigned mask = 0; mask < (1u << ground); ++mask)
      if (is_independent(matroid, mask_to_set(mask, ground)))
        family.push_back(mask);

    // Downward closure.
    for (unsigned mask : family)
      for (int x = 0; x < ground; ++x)
        if (mask & (1u << x))
          CHECK(std::binary_search(family.begin(), family.end(),
                                   mask & ~(1u << x)));

    // Exchange over every |X| < |Y| pair.
    for (unsigned x_mask : family) {
      for (unsigned y_mask : family) {
        if (std::popcount(y_mask) <= std::popcount(x_mask)) continue;
        bool found = false;
        for (int e = 0; e < ground && !found; ++e)
          if ((y_mask & (1u << e)) && !(x_mask & (1u << e)))
            found = std::binary_search(family.begin(), family.end(),
                                       x_mask | (1u << e));
        CHECK(found);
      }
    }
  }
}

TEST_SUITE_END();
