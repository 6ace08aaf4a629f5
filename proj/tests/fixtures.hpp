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

#include <map>

#include "arraydesign/model.hpp"

namespace testfix {

// Reference instance used across suites: lambda 1, aperture [-3.5, 3.5] at
// pitch 1/16 (113 candidates), 11 sensors, power-law prior r=1, P=1,
// 901 retained modes. Heavy matrices are shared across noise levels.
inline const arraydesign::SensingModel& reference_model(double snr_db) {
  static const arraydesign::SensingModel base = [] {
    const arraydesign::CandidateGrid grid =
        arraydesign::make_uniform_grid(-3.5, 3.5, 0.0625);
    const arraydesign::PriorSpec prior = arraydesign::build_prior(1, 1.0, 450);
    return arraydesign::build_model(1.0, 30.0, 11, grid, prior);
  }();
  static std::map<double, arraydesign::SensingModel> cache;
  const auto it = cache.find(snr_db);
  if (it != cache.end()) return it->second;
  return cache.emplace(snr_db, base.with_noise(snr_db, 11)).first->second;
}

// Small instance for enumeration-heavy properties: 21 candidates over
// [-1.25, 1.25], 121 modes.
inline const arraydesign::SensingModel& small_model(double snr_db) {
  static const arraydesign::SensingModel base = [] {
    const arraydesign::CandidateGrid grid =
        arraydesign::make_uniform_grid(-1.25, 1.25, 0.125);
    const arraydesign::PriorSpec prior = arraydesign::build_prior(1, 1.0, 60);
    return arraydesign::build_model(1.0, 10.0, 5, grid, prior);
  }();
  static std::map<double, arraydesign::SensingModel> cache;
  const auto it = cache.find(snr_db);
  if (it != cache.end()) return it->second;
  return cache.emplace(snr_db, base.with_noise(snr_db, 5)).first->second;
}

}  // namespace testfix
