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

#include <vector>

namespace arraydesign {

/// Finite set of admissible sensor positions on a line segment.
/// Positions are strictly increasing and unique; candidate "indices"
/// throughout the library are offsets into `positions`.
struct CandidateGrid {
  std::vector<double> positions;
  double delta = 0.0;
  double aperture_min = 0.0;
  double aperture_max = 0.0;

  int size() const { return static_cast<int>(positions.size()); }
};

/// Uniform grid aperture_min + i * delta. Both endpoints are included when
/// (aperture_max - aperture_min) / delta is integral to 1e-9 relative;
/// otherwise the last point below aperture_max closes the grid.
/// Throws std::invalid_argument for non-finite bounds, min >= max, or
/// delta <= 0.
CandidateGrid make_uniform_grid(double aperture_min, double aperture_max,
                                double delta);

}  // namespace arraydesign
