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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "arraydesign/csv.hpp"
#include "arraydesign/errors.hpp"
#include "arraydesign/pipeline.hpp"
#include "arraydesign/run_config.hpp"

using namespace arraydesign;
namespace fs = std::filesystem;

namespace {

const char* kSmallConfig = R"({
  "lambda": 1.0,
  "aperture": {"min": -1.25, "max": 1.25},
  "grid_delta": 0.25,
  "budget": 3,
  "prior": {"r": 1, "P": 1.0, "M_half": 60},
  "snr_db": [10.0, 0.0],
  "constraint": {"type": "uniform"},
  "solver": "lazy",
  "seed": 11,
  "trials": 64,
  "eval_snrs_db": [10.0, 0.0],
  "output_dir": "runs"
})";

struct Scratch {
  fs::path dir;
  explicit Scratch(const char* tag) {
    dir = fs::temp_directory_path() /
          (std::string("arraydesign_pipeline_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  REQUIRE(result.ec == std::errc());
  return value;
}

// Swaps one JSON fragment for another in the small config template.
std::string patched(const std::string& from, const std::string& to) {
  std::string text = kSmallConfig;
  const std::size_t at = text.find(from);
  REQUIRE(at != std::string::npos);
  text.replace(at, from.size(), to);
  return text;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("config parsing fills every field") {
  const RunConfig config = parse_run_config(kSmallConfig);
  CHECK(config.lambda == 1.0);
  CHECK(config.aperture_min == -1.25);
  CHECK(config.aperture_max == 1.25);
  CHECK(config.grid_delta == 0.25);
  CHECK(config.budget == 3);
  CHECK(config.prior_r == 1);
  CHECK(config.prior_total_power == 1.0);
  CHECK(config.prior_m_half == 60);
  CHECK(config.snr_db == std::vector<double>{10.0, 0.0});
  CHECK(config.constraint.kind == ConstraintConfig::Kind::kUniform);
  CHECK(config.solver == SolverKind::kLazy);
  CHECK(config.seed == 11);
  CHECK(config.trials == 64);
  CHECK(config.eval_snrs_db == std::vector<double>{10.0, 0.0});
  CHECK_FALSE(config.inject_epsilon.has_value());
  CHECK(config.output_dir == "runs");
  CHECK(config.config_hash.size() == 16);

  const CandidateGrid grid = config_grid(config);
  CHECK(grid.size() == 11);
  const MatroidSpec matroid = config_matroid(config, grid);
  CHECK(matroid.kind == MatroidSpec::Kind::kUniform);
  CHECK(matroid.global_cap == 3);
}

TEST_CASE("optional keys default sensibly") {
  const RunConfig config = parse_run_config(R"({
    "lambda": 2.0,
    "aperture": {"min": 0.0, "max": 2.0},
    "grid_delta": 0.5,
    "budget": 2,
    "prior": {"r": 2, "P": 0.5, "M_half": 20},
    "snr_db": 5.0
  })");
  CHECK(config.snr_db == std::vector<double>{5.0});
  CHECK(config.constraint.kind == ConstraintConfig::Kind::kUniform);
  CHECK(config.solver == SolverKind::kGreedy);
  CHECK(config.seed == 0);
  CHECK(config.trials == 0);
  CHECK(config.eval_snrs_db.empty());
  CHECK(config.output_dir == ".");
}

TEST_CASE("config hash is stable and canonical") {
  const RunConfig a = parse_run_config(kSmallConfig);
  const RunConfig b = parse_run_config(kSmallConfig);
  CHECK(a.config_hash == b.config_hash);

  // Key order does not matter; values do.
  const RunConfig reordered = parse_run_config(R"({
    "seed": 11, "solver": "lazy", "trials": 64,
    "budget": 3, "grid_delta": 0.25, "lambda": 1.0,
    "aperture": {"max": 1.25, "min": -1.25},
    "prior": {"M_half": 60, "P": 1.0, "r": 1},
    "snr_db": [10.0, 0.0], "eval_snrs_db": [10.0, 0.0],
    "constraint": {"type": "uniform"}, "output_dir": "runs"
  })");
  CHECK(reordered.config_hash == a.config_hash);

  const RunConfig reseeded =
      parse_run_config(patched("\"seed\": 11", "\"seed\": 12"));
  CHECK(reseeded.config_hash != a.config_hash);
}

TEST_CASE("unknown keys are rejected everywhere") {
  CHECK_THROWS_AS(
      (void)parse_run_config(patched("\"seed\": 11", "\"sede\": 11")),
      config_error);
  CHECK_THROWS_AS((void)parse_run_config(patched(
                      "\"min\": -1.25", "\"min\": -1.25, \"pad\": 1")),
                  config_error);
  CHECK_THROWS_AS((void)parse_run_config(patched(
                      "\"r\": 1", "\"r\": 1, \"alpha\": 2")),
                  config_error);
  CHECK_THROWS_AS((void)parse_run_config(patched(
                      "{\"type\": \"uniform\"}",
                      "{\"type\": \"uniform\", \"width\": 1}")),
                  config_error);
}

TEST_CASE("invalid values are rejected with config errors") {
  CHECK_THROWS_AS((void)parse_run_config("not json at all"), config_error);
  CHECK_THROWS_AS((void)parse_run_config("[1,2,3]"), config_error);

  const auto reject = [](const std::string& from, const std::string& to) {
    CHECK_THROWS_AS((void)parse_run_config(patched(from, to)), config_error);
  };
  reject("\"lambda\": 1.0", "\"lambda\": 0.0");
  reject("\"min\": -1.25", "\"min\": 2.0");
  reject("\"grid_delta\": 0.25", "\"grid_delta\": -0.25");
  reject("\"budget\": 3", "\"budget\": 0");
  reject("\"budget\": 3", "\"budget\": 2.5");
  reject("\"budget\": 3", "\"budget\": 99");  // more than the grid offers
  reject("\"r\": 1", "\"r\": 0");
  reject("\"P\": 1.0", "\"P\": 0.0");
  reject("\"M_half\": 60", "\"M_half\": 0");
  reject("\"snr_db\": [10.0, 0.0]", "\"snr_db\": []");
  reject("\"snr_db\": [10.0, 0.0]", "\"snr_db\": [\"loud\"]");
  reject("\"solver\": \"lazy\"", "\"solver\": \"downhill\"");
  reject("\"seed\": 11", "\"seed\": -4");
  reject("\"trials\": 64", "\"trials\": -1");
  reject("\"output_dir\": \"runs\"", "\"output_dir\": \"\"");
  reject("\"eval_snrs_db\": [10.0, 0.0]",
         "\"inject_epsilon\": -1e-4, \"eval_snrs_db\": [10.0, 0.0]");
}

TEST_CASE("partition constraints parse and bucket the grid") {
  const std::string text = patched(
      "{\"type\": \"uniform\"}",
      "{\"type\": \"partition\", \"bin_width\": 0.5, \"offset\": -0.25, "
      "\"caps\": 1}");
  const RunConfig config = parse_run_config(text);
  REQUIRE(config.constraint.kind == ConstraintConfig::Kind::kPartition);
  CHECK(config.constraint.bin_width == 0.5);
  CHECK(config.constraint.offset == -0.25);
  CHECK(config.constraint.caps_broadcast);
  CHECK_FALSE(config.constraint.global_cap.has_value());

  const CandidateGrid grid = config_grid(config);
  const MatroidSpec matroid = config_matroid(config, grid);
  CHECK(matroid.kind == MatroidSpec::Kind::kPartition);
  CHECK(matroid.bin_count() == 6);
  CHECK(matroid.global_cap == 3);  // defaults to the budget
  for (int cap : matroid.caps) CHECK(cap == 1);

  // Uniform constraints reject partition-only keys.
  CHECK_THROWS_AS((void)parse_run_config(patched(
                      "{\"type\": \"uniform\"}",
                      "{\"type\": \"uniform\", \"bin_width\": 0.5}")),
                  config_error);
  // Missing caps, bad type, or a cap-list length mismatch all fail at
  // parse time.
  CHECK_THROWS_AS((void)parse_run_config(patched(
                      "{\"type\": \"uniform\"}",
                      "{\"type\": \"partition\", \"bin_width\": 0.5}")),
                  config_error);
  CHECK_THROWS_AS((void)parse_run_config(patched(
                      "{\"type\": \"uniform\"}", "{\"type\": \"banana\"}")),
                  config_error);
  CHECK_THROWS_AS(
      (void)parse_run_config(patched(
          "{\"type\": \"uniform\"}",
          "{\"type\": \"partition\", \"bin_width\": 0.5, \"offset\": -0.25, "
          "\"caps\": [1, 1]}")),
      config_error);
}

TEST_CASE("config loads identically from a file") {
  const Scratch scratch("loadfile");
  const fs::path path = scratch.dir / "run.json";
  {
    std::ofstream out(path);
    out << kSmallConfig;
  }
  const RunConfig from_file = load_run_config(path);
  const RunConfig from_text = parse_run_config(kSmallConfig);
  CHECK(from_file.config_hash == from_text.config_hash);
  CHECK_THROWS_AS((void)load_run_config(scratch.dir / "absent.json"),
                  config_error);
}

TEST_CASE("design command writes one auditable file per operating point") {
  const Scratch scratch("design");
  const RunConfig config = parse_run_config(kSmallConfig);

  std::ostringstream log;
  CHECK(cmd_design(config, scratch.dir, log) == kExitOk);
  CHECK(log.str().find("design snr_db=10") != std::string::npos);
  CHECK(log.str().find("design snr_db=0") != std::string::npos);

  for (const char* name : {"design_snr10.csv", "design_snr0.csv"}) {
    CAPTURE(name);
    const CsvContent content = read_csv(scratch.dir / name);
    CHECK(content.header ==
          std::vector<std::string>{"step", "index", "position", "gain_nats",
                                   "cumulative_mi_nats"});
    REQUIRE(content.rows.size() == 3);

    double cumulative = 0.0;
    for (std::size_t i = 0; i < content.rows.size(); ++i) {
      CHECK(content.rows[i][0] == std::to_string(i + 1));
      const int index = int(parse_double(content.rows[i][1]));
      CHECK(index >= 0);
      CHECK(index < 11);
      cumulative += parse_double(content.rows[i][3]);
      CHECK(std::abs(parse_double(content.rows[i][4]) - cumulative) < 1e-12);
    }

    CHECK(content.meta.at("config_hash") == config.config_hash);
    CHECK(content.meta.at("solver") == "lazy");
    CHECK(content.meta.at("epsilon_source") == "computed");
    CHECK(content.meta.at("tie_break") ==
          "ties within 1e-12 relative; smallest |position|; negative first; "
          "lowest index");
    CHECK(std::abs(parse_double(content.meta.at("total_mi_nats")) -
                   cumulative) < 1e-10);
    // Certificates are ordered: mi <= online <= value implied by the
    // data-independent ratio... the data-dependent one may be tighter.
    const double mi = parse_double(content.meta.at("total_mi_nats"));
    CHECK(parse_double(content.meta.at("online_hi_nats")) >= mi - 1e-12);
    CHECK(parse_double(content.meta.at("nemhauser_hi_nats")) >= mi - 1e-12);
  }

  // Reruns are byte identical.
  const std::string before = slurp(scratch.dir / "design_snr10.csv");
  std::ostringstream rerun_log;
  CHECK(cmd_design(config, scratch.dir, rerun_log) == kExitOk);
  CHECK(slurp(scratch.dir / "design_snr10.csv") == before);
}

TEST_CASE("fractional operating points name files unambiguously") {
  const Scratch scratch("fractional");
  const RunConfig config =
      parse_run_config(patched("\"snr_db\": [10.0, 0.0]", "\"snr_db\": 12.5"));
  std::ostringstream log;
  CHECK(cmd_design(config, scratch.dir, log) == kExitOk);
  CHECK(fs::exists(scratch.dir / "design_snr12.5.csv"));
}

TEST_CASE("bounds command recomputes the certificate from a design file") {
  const Scratch scratch("bounds");
  const RunConfig config = parse_run_config(kSmallConfig);
  std::ostringstream log;
  REQUIRE(cmd_design(config, scratch.dir, log) == kExitOk);

  const fs::path design_file = scratch.dir / "design_snr10.csv";
  CHECK(cmd_bounds(config, design_file, scratch.dir, log) == kExitOk);

  const CsvContent bounds = read_csv(scratch.dir / "bounds.csv");
  REQUIRE(bounds.rows.size() == 7);
  std::vector<std::string> names;
  for (const auto& row : bounds.rows) names.push_back(row[0]);
  CHECK(names == std::vector<std::string>{
                     "truncation_lo", "truncation_hi", "discretization_hi",
                     "combined_greedy_lo", "combined_opt_hi", "nemhauser_hi",
                     "online_hi"});

  // The recomputed value agrees with the design file's incremental total.
  const CsvContent design = read_csv(design_file);
  CHECK(std::abs(parse_double(bounds.meta.at("design_mi_nats")) -
                 parse_double(design.meta.at("total_mi_nats"))) < 1e-9);

  // Every reported number parses or is explicitly inapplicable.
  for (const auto& row : bounds.rows) {
    if (row[1] == "inapplicable") {
      CHECK(row[2] == "false");
      continue;
    }
    (void)parse_double(row[1]);
  }
}

TEST_CASE("artifacts from a different configuration are refused") {
  const Scratch scratch("refuse");
  const RunConfig config = parse_run_config(kSmallConfig);
  std::ostringstream log;
  REQUIRE(cmd_design(config, scratch.dir, log) == kExitOk);
  const fs::path design_file = scratch.dir / "design_snr10.csv";

  const RunConfig other =
      parse_run_config(patched("\"seed\": 11", "\"seed\": 12"));
  CHECK_THROWS_AS((void)cmd_bounds(other, design_file, scratch.dir, log),
                  config_error);
  CHECK_THROWS_AS(
      (void)cmd_mc(other, {design_file}, scratch.dir, 1, log),
      config_error);

  // A tampered design row is caught by the grid range check: bump the
  // index cell of the first data row out of range.
  std::string text = slurp(design_file);
  const std::size_t at = text.find('\n') + 1;
  const std::size_t cell = text.find(',', at) + 1;
  text.replace(cell, text.find(',', cell) - cell, "9999");
  {
    std::ofstream out(design_file, std::ios::binary | std::ios::trunc);
    out << text;
  }
  CHECK_THROWS_AS((void)cmd_mc(config, {design_file}, scratch.dir, 1, log),
                  config_error);
}

TEST_CASE("mc command writes the paired cross table deterministically") {
  const Scratch scratch("mc");
  const RunConfig config = parse_run_config(kSmallConfig);
  std::ostringstream log;
  REQUIRE(cmd_design(config, scratch.dir, log) == kExitOk);

  const std::vector<fs::path> files = {scratch.dir / "design_snr10.csv",
                                       scratch.dir / "design_snr0.csv"};
  CHECK(cmd_mc(config, files, scratch.dir, 2, log) == kExitOk);

  const CsvContent table = read_csv(scratch.dir / "mse.csv");
  CHECK(table.header ==
        std::vector<std::string>{"design_label", "design_target_snr_db",
                                 "eval_snr_db", "trials", "mean_mse",
                                 "stderr_mse", "trace_posterior_cov"});
  REQUIRE(table.rows.size() == 4);  // 2 designs x 2 evaluation points
  CHECK(table.rows[0][0] == "design_snr10");
  CHECK(table.rows[2][0] == "design_snr0");
  for (const auto& row : table.rows) {
    CHECK(row[3] == "64");
    CHECK(parse_double(row[4]) > 0.0);
    CHECK(parse_double(row[6]) > 0.0);
  }
  CHECK(table.meta.at("seed") == "11");
  CHECK(table.meta.at("config_hash") == config.config_hash);

  // Worker count cannot leak into the artifact.
  const std::string before = slurp(scratch.dir / "mse.csv");
  CHECK(cmd_mc(config, files, scratch.dir, 7, log) == kExitOk);
  CHECK(slurp(scratch.dir / "mse.csv") == before);

  CHECK_THROWS_AS((void)cmd_mc(config, {}, scratch.dir, 1, log),
                  config_error);
  const RunConfig no_trials =
      parse_run_config(patched("\"trials\": 64", "\"trials\": 0"));
  CHECK_THROWS_AS((void)cmd_mc(no_trials, files, scratch.dir, 1, log),
                  config_error);
}

TEST_CASE("self checks pass on the reduced instance") {
  const RunConfig config = parse_run_config(kSmallConfig);
  std::ostringstream out;
  CHECK(cmd_verify(config, out) == kExitOk);

  std::istringstream lines(out.str());
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "suite,cases,failures,worst_margin");
  int suites = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++suites;
    // suite,cases,failures,margin: failures is the third field.
    const std::size_t first = line.find(',');
    const std::size_t second = line.find(',', first + 1);
    const std::size_t third = line.find(',', second + 1);
    CHECK(line.substr(second + 1, third - second - 1) == "0");
  }
  CHECK(suites >= 5);
}

TEST_CASE("exit codes are part of the contract") {
  CHECK(kExitOk == 0);
  CHECK(kExitConfigError == 1);
  CHECK(kExitNumericalError == 2);
  CHECK(kExitVerifyFailure == 3);
}

TEST_SUITE_END();
