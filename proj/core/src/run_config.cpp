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

#include "arraydesign/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arraydesign/csv.hpp"
#include "arraydesign/errors.hpp"
#include "arraydesign/model.hpp"
#include "arraydesign/version.hpp"

namespace arraydesign {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw config_error("config: " + path + ": " + message);
}

void require_keys(const json& node, const std::string& path,
                  const std::set<std::string>& allowed) {
  if (!node.is_object()) fail(path, "expected an object");
  for (const auto& item : node.items())
    if (!allowed.contains(item.key()))
      fail(path + "." + item.key(), "unknown key");
}

const json& require(const json& node, const std::string& path,
                    const std::string& key) {
  if (!node.contains(key)) fail(path + "." + key, "missing required key");
  return node.at(key);
}

double as_finite(const json& node, const std::string& path) {
  if (!node.is_number()) fail(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

int as_int(const json& node, const std::string& path) {
  if (!node.is_number_integer()) fail(path, "expected an integer");
  const auto v = node.get<long long>();
  if (v < -2'000'000'000LL || v > 2'000'000'000LL) fail(path, "out of range");
  return static_cast<int>(v);
}

std::vector<double> as_snr_list(const json& node, const std::string& path) {
  std::vector<double> out;
  if (node.is_number()) {
    out.push_back(as_finite(node, path));
    return out;
  }
  if (!node.is_array() || node.empty())
    fail(path, "expected a number or a nonempty list of numbers");
  for (std::size_t i = 0; i < node.size(); ++i) {
    std::ostringstream item;
    item << path << "[" << i << "]";
    out.push_back(as_finite(node.at(i), item.str()));
  }
  return out;
}

ConstraintConfig parse_constraint(const json& node, const std::string& path) {
  ConstraintConfig out;
  require_keys(node, path,
               {"type", "bin_width", "offset", "caps", "global_cap"});
  const json& type = require(node, path, "type");
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const std::string kind = type.get<std::string>();

  if (kind == "uniform") {
    for (const char* key : {"bin_width", "offset", "caps", "global_cap"})
      if (node.contains(key))
        fail(path + "." + key, "not valid for the uniform constraint");
    out.kind = ConstraintConfig::Kind::kUniform;
    return out;
  }
  if (kind != "partition")
    fail(path + ".type", "must be \"uniform\" or \"partition\"");

  out.kind = ConstraintConfig::Kind::kPartition;
  out.bin_width = as_finite(require(node, path, "bin_width"),
                            path + ".bin_width");
  if (!(out.bin_width > 0.0)) fail(path + ".bin_width", "must be > 0");
  if (node.contains("offset")) {
    out.offset = as_finite(node.at("offset"), path + ".offset");
  }

  const json& caps = require(node, path, "caps");
  if (caps.is_number_integer()) {
    out.caps_broadcast = true;
    out.caps.push_back(as_int(caps, path + ".caps"));
  } else if (caps.is_array() && !caps.empty()) {
    out.caps_broadcast = false;
    for (std::size_t i = 0; i < caps.size(); ++i) {
      std::ostringstream item;
      item << path << ".caps[" << i << "]";
      out.caps.push_back(as_int(caps.at(i), item.str()));
    }
  } else {
    fail(path + ".caps", "expected an integer or a nonempty integer list");
  }
  for (int cap : out.caps)
    if (cap < 0) fail(path + ".caps", "caps must be >= 0");

  if (node.contains("global_cap")) {
    const int cap = as_int(node.at("global_cap"), path + ".global_cap");
    if (cap < 0) fail(path + ".global_cap", "must be >= 0");
    out.global_cap = cap;
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }

  require_keys(doc, "config",
               {"lambda", "aperture", "grid_delta", "budget", "prior",
                "snr_db", "constraint", "solver", "seed", "trials",
                "eval_snrs_db", "inject_epsilon", "output_dir"});

  RunConfig config;
  config.lambda = as_finite(require(doc, "config", "lambda"), "config.lambda");
  if (!(config.lambda > 0.0)) fail("config.lambda", "must be > 0");

  {
    const json& aperture = require(doc, "config", "aperture");
    require_keys(aperture, "config.aperture", {"min", "max"});
    config.aperture_min =
        as_finite(require(aperture, "config.aperture", "min"),
                  "config.aperture.min");
    config.aperture_max =
        as_finite(require(aperture, "config.aperture", "max"),
                  "config.aperture.max");
    if (!(config.aperture_min < config.aperture_max))
      fail("config.aperture", "min must be < max");
  }

  config.grid_delta =
      as_finite(require(doc, "config", "grid_delta"), "config.grid_delta");
  if (!(config.grid_delta > 0.0)) fail("config.grid_delta", "must be > 0");

  config.budget = as_int(require(doc, "config", "budget"), "config.budget");
  if (config.budget < 1) fail("config.budget", "must be >= 1");

  {
    const json& prior = require(doc, "config", "prior");
    require_keys(prior, "config.prior", {"r", "P", "M_half"});
    config.prior_r = as_int(require(prior, "config.prior", "r"),
                            "config.prior.r");
    if (config.prior_r < 1) fail("config.prior.r", "must be >= 1");
    config.prior_total_power =
        as_finite(require(prior, "config.prior", "P"), "config.prior.P");
    if (!(config.prior_total_power > 0.0))
      fail("config.prior.P", "must be > 0");
    config.prior_m_half = as_int(require(prior, "config.prior", "M_half"),
                                 "config.prior.M_half");
    if (config.prior_m_half < 1) fail("config.prior.M_half", "must be >= 1");
  }

  config.snr_db = as_snr_list(require(doc, "config", "snr_db"),
                              "config.snr_db");

  if (doc.contains("constraint"))
    config.constraint = parse_constraint(doc.at("constraint"),
                                         "config.constraint");

  if (doc.contains("solver")) {
    const json& solver = doc.at("solver");
    if (!solver.is_string()) fail("config.solver", "expected a string");
    const std::string name = solver.get<std::string>();
    if (name == "greedy") {
      config.solver = SolverKind::kGreedy;
    } else if (name == "lazy") {
      config.solver = SolverKind::kLazy;
    } else if (name == "exhaustive") {
      config.solver = SolverKind::kExhaustive;
    } else {
      fail("config.solver", "must be \"greedy\", \"lazy\", or \"exhaustive\"");
    }
  }

  if (doc.contains("seed")) {
    const json& seed = doc.at("seed");
    if (!seed.is_number_integer() ||
        (seed.is_number_integer() && !seed.is_number_unsigned() &&
         seed.get<long long>() < 0))
      fail("config.seed", "expected a nonnegative integer");
    config.seed = seed.get<std::uint64_t>();
  }

  if (doc.contains("trials")) {
    config.trials = as_int(doc.at("trials"), "config.trials");
    if (config.trials < 0) fail("config.trials", "must be >= 0");
  }

  if (doc.contains("eval_snrs_db"))
    config.eval_snrs_db =
        as_snr_list(doc.at("eval_snrs_db"), "config.eval_snrs_db");

  if (doc.contains("inject_epsilon")) {
    const double eps =
        as_finite(doc.at("inject_epsilon"), "config.inject_epsilon");
    if (!(eps >= 0.0)) fail("config.inject_epsilon", "must be >= 0");
    config.inject_epsilon = eps;
  }

  if (doc.contains("output_dir")) {
    const json& dir = doc.at("output_dir");
    if (!dir.is_string() || dir.get<std::string>().empty())
      fail("config.output_dir", "expected a nonempty string");
    config.output_dir = dir.get<std::string>();
  }

  // The partition constraint needs enough structure to bucket the grid;
  // checked here so errors surface at load time, not at run time.
  if (config.constraint.kind == ConstraintConfig::Kind::kPartition) {
    const CandidateGrid grid = config_grid(config);
    config_matroid(config, grid);
  } else {
    const CandidateGrid grid = config_grid(config);
    if (config.budget > grid.size())
      fail("config.budget", "exceeds the number of grid candidates");
  }

  const std::string canonical = doc.dump();
  config.config_hash =
      to_hex16(fnv1a64(canonical + "|" + std::string(kVersion)));
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

CandidateGrid config_grid(const RunConfig& config) {
  try {
    return make_uniform_grid(config.aperture_min, config.aperture_max,
                             config.grid_delta);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: ") + e.what());
  }
}

MatroidSpec config_matroid(const RunConfig& config,
                           const CandidateGrid& grid) {
  if (config.constraint.kind == ConstraintConfig::Kind::kUniform) {
    if (config.budget > grid.size())
      throw config_error("config: budget exceeds the number of candidates");
    return uniform_matroid(grid.size(), config.budget);
  }
  const int global_cap = config.constraint.global_cap.value_or(config.budget);
  try {
    if (config.constraint.caps_broadcast)
      return partition_from_bins(grid, config.constraint.bin_width,
                                 config.constraint.offset,
                                 config.constraint.caps.at(0), global_cap);
    return partition_from_bins(grid, config.constraint.bin_width,
                               config.constraint.offset,
                               config.constraint.caps, global_cap);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: constraint: ") + e.what());
  }
}

const char* solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kGreedy: return "greedy";
    case SolverKind::kLazy: return "lazy";
    case SolverKind::kExhaustive: return "exhaustive";
  }
  return "greedy";
}

}  // namespace arraydesign
