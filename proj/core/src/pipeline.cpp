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

#include "arraydesign/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "arraydesign/bayes.hpp"
#include "arraydesign/bounds.hpp"
#include "arraydesign/csv.hpp"
#include "arraydesign/errors.hpp"
#include "arraydesign/model.hpp"
#include "arraydesign/objective.hpp"
#include "arraydesign/optimizer.hpp"
#include "arraydesign/verify.hpp"
#include "arraydesign/version.hpp"

namespace arraydesign {
namespace {

constexpr const char* kTieBreakNote =
    "ties within 1e-12 relative; smallest |position|; negative first; "
    "lowest index";

double parse_double_cell(const std::string& cell, const std::string& where) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto result = std::from_chars(begin, end, v);
  if (result.ec != std::errc() || result.ptr != end)
    throw config_error("csv: bad number '" + cell + "' in " + where);
  return v;
}

int parse_int_cell(const std::string& cell, const std::string& where) {
  int v = 0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto result = std::from_chars(begin, end, v);
  if (result.ec != std::errc() || result.ptr != end)
    throw config_error("csv: bad integer '" + cell + "' in " + where);
  return v;
}

SensingModel model_for(const RunConfig& config, const CandidateGrid& grid,
                       double snr_db) {
  try {
    const PriorSpec prior = build_prior(config.prior_r,
                                        config.prior_total_power,
                                        config.prior_m_half);
    return build_model(config.lambda, snr_db, config.budget, grid, prior);
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: ") + e.what());
  }
}

Design run_solver(const RunConfig& config, const SensingModel& model) {
  if (config.constraint.kind == ConstraintConfig::Kind::kPartition) {
    if (config.solver != SolverKind::kGreedy)
      throw config_error(
          "config: the partition constraint supports only the greedy solver");
    return matroid_greedy(model, config_matroid(config, model.grid()));
  }
  switch (config.solver) {
    case SolverKind::kGreedy: return greedy(model, config.budget);
    case SolverKind::kLazy: return lazy_greedy(model, config.budget);
    case SolverKind::kExhaustive:
      try {
        return exhaustive_opt(model, config.budget);
      } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
      }
  }
  throw config_error("config: unknown solver");
}

std::string applicable_or(bool applicable, double value) {
  return applicable ? format_double(value) : "inapplicable";
}

void add_report_meta(CsvFile* csv, const RunConfig& config,
                     const SensingModel& model, const Design& design,
                     const BoundsReport& report) {
  csv->add_meta("tool", "arraydesign " + std::string(kVersion));
  csv->add_meta("config_hash", config.config_hash);
  csv->add_meta("snr_db", format_double(model.snr_db()));
  csv->add_meta("noise_var", format_double(model.noise_var()));
  csv->add_meta("budget", std::to_string(design.budget));
  csv->add_meta("solver", design.solver);
  csv->add_meta("constraint", design.constraint);
  csv->add_meta("tie_break", kTieBreakNote);
  csv->add_meta("gain_evaluations", std::to_string(design.gain_evaluations));
  csv->add_meta("total_mi_nats", format_double(design.mi_nats));
  csv->add_meta("nemhauser_hi_nats", format_double(report.nemhauser_hi));
  csv->add_meta("online_hi_nats", format_double(report.online_hi));
  csv->add_meta("epsilon", format_double(report.epsilon));
  csv->add_meta("epsilon_halfwidth", format_double(report.epsilon_halfwidth));
  csv->add_meta("epsilon_source",
                report.epsilon_injected ? "injected" : "computed");
  csv->add_meta("truncation_lo_nats",
                applicable_or(report.truncation_applicable, report.truncation_lo));
  csv->add_meta("truncation_hi_nats",
                applicable_or(report.truncation_applicable, report.truncation_hi));
  csv->add_meta("discretization_hi_nats",
                format_double(report.discretization_hi));
  csv->add_meta("combined_greedy_lo_nats",
                applicable_or(report.combined_applicable, report.combined_greedy_lo));
  csv->add_meta("combined_opt_hi_nats",
                applicable_or(report.combined_applicable, report.combined_opt_hi));
}

std::string design_file_name(double snr_db) {
  return "design_snr" + format_double(snr_db) + ".csv";
}

struct LoadedDesign {
  McDesign mc;
  double snr_db = 0.0;
  int budget = 0;
};

LoadedDesign load_design_file(const RunConfig& config,
                              const std::filesystem::path& path) {
  const CsvContent content = read_csv(path);
  const auto meta = [&](const std::string& key) -> const std::string& {
    const auto it = content.meta.find(key);
    if (it == content.meta.end())
      throw config_error("design file " + path.string() +
                         " is missing metadata key '" + key + "'");
    return it->second;
  };

  if (meta("config_hash") != config.config_hash)
    throw config_error("design file " + path.string() +
                       " was produced by a different configuration "
                       "(config_hash mismatch)");

  const std::vector<std::string> expected_header = {
      "step", "index", "position", "gain_nats", "cumulative_mi_nats"};
  if (content.header != expected_header)
    throw config_error("design file " + path.string() +
                       " has an unexpected header");

  LoadedDesign loaded;
  loaded.snr_db = parse_double_cell(meta("snr_db"), path.string());
  loaded.budget = parse_int_cell(meta("budget"), path.string());
  loaded.mc.label = path.stem().string();
  loaded.mc.target_snr_db = loaded.snr_db;
  for (const auto& row : content.rows)
    loaded.mc.indices.push_back(parse_int_cell(row.at(1), path.string()));
  return loaded;
}

}  // namespace

int cmd_design(const RunConfig& config, const std::filesystem::path& out_dir,
               std::ostream& out) {
  const CandidateGrid grid = config_grid(config);
  std::filesystem::create_directories(out_dir);

  for (double snr_db : config.snr_db) {
    const SensingModel model = model_for(config, grid, snr_db);
    const Design design = run_solver(config, model);
    const BoundsReport report =
        build_bounds_report(model, design, config.inject_epsilon);

    CsvFile csv({"step", "index", "position", "gain_nats",
                 "cumulative_mi_nats"});
    double cumulative = 0.0;
    for (std::size_t i = 0; i < design.chosen_indices.size(); ++i) {
      cumulative += design.gains[i];
      csv.add_row({std::to_string(i + 1),
                   std::to_string(design.chosen_indices[i]),
                   format_double(design.chosen_positions[i]),
                   format_double(design.gains[i]),
                   format_double(cumulative)});
    }
    add_report_meta(&csv, config, model, design, report);

    const std::filesystem::path file = out_dir / design_file_name(snr_db);
    csv.write(file);

    out << "design snr_db=" << format_double(snr_db)
        << " sensors=" << design.chosen_indices.size()
        << " mi_nats=" << format_double(design.mi_nats)
        << " online_hi=" << format_double(report.online_hi)
        << " nemhauser_hi=" << format_double(report.nemhauser_hi)
        << " evaluations=" << design.gain_evaluations << " -> "
        << file.string() << "\n";
  }
  return kExitOk;
}

int cmd_bounds(const RunConfig& config,
               const std::filesystem::path& design_file,
               const std::filesystem::path& out_dir, std::ostream& out) {
  const CandidateGrid grid = config_grid(config);
  const LoadedDesign loaded = load_design_file(config, design_file);
  const SensingModel model = model_for(config, grid, loaded.snr_db);

  Design design;
  design.chosen_indices = loaded.mc.indices;
  design.budget = loaded.budget;
  for (int x : design.chosen_indices) {
    if (x < 0 || x >= grid.size())
      throw config_error("design file " + design_file.string() +
                         " indexes outside the configured grid");
    design.chosen_positions.push_back(
        grid.positions[static_cast<std::size_t>(x)]);
  }
  design.mi_nats = mutual_information(model, design.chosen_indices);

  const BoundsReport report =
      build_bounds_report(model, design, config.inject_epsilon);

  CsvFile csv({"name", "value_nats", "hypothesis_ok", "epsilon", "delta",
               "n_sensors", "noise_var"});
  const std::string eps = format_double(report.epsilon);
  const std::string delta = format_double(report.delta);
  const std::string sensors = std::to_string(report.n_sensors);
  const std::string noise = format_double(report.noise_var);
  const std::string trunc_ok = report.truncation_applicable ? "true" : "false";

  const auto row = [&](const std::string& name, const std::string& value,
                       const std::string& ok) {
    csv.add_row({name, value, ok, eps, delta, sensors, noise});
  };
  row("truncation_lo",
      applicable_or(report.truncation_applicable, report.truncation_lo),
      trunc_ok);
  row("truncation_hi",
      applicable_or(report.truncation_applicable, report.truncation_hi),
      trunc_ok);
  row("discretization_hi", format_double(report.discretization_hi), "true");
  row("combined_greedy_lo",
      applicable_or(report.combined_applicable, report.combined_greedy_lo),
      trunc_ok);
  row("combined_opt_hi",
      applicable_or(report.combined_applicable, report.combined_opt_hi),
      trunc_ok);
  row("nemhauser_hi", format_double(report.nemhauser_hi), "true");
  row("online_hi", format_double(report.online_hi), "true");

  csv.add_meta("tool", "arraydesign " + std::string(kVersion));
  csv.add_meta("config_hash", config.config_hash);
  csv.add_meta("design_file", design_file.filename().string());
  csv.add_meta("snr_db", format_double(loaded.snr_db));
  csv.add_meta("design_mi_nats", format_double(design.mi_nats));
  csv.add_meta("epsilon_source",
               report.epsilon_injected ? "injected" : "computed");
  csv.add_meta("epsilon_halfwidth", format_double(report.epsilon_halfwidth));

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path file = out_dir / "bounds.csv";
  csv.write(file);
  out << "bounds snr_db=" << format_double(loaded.snr_db)
      << " mi_nats=" << format_double(design.mi_nats) << " -> "
      << file.string() << "\n";
  return kExitOk;
}

int cmd_mc(const RunConfig& config,
           const std::vector<std::filesystem::path>& design_files,
           const std::filesystem::path& out_dir, int threads,
           std::ostream& out) {
  if (design_files.empty())
    throw config_error("mc: at least one design file is required");
  if (config.trials < 1)
    throw config_error("config.trials: must be >= 1 for the mc command");
  if (config.eval_snrs_db.empty())
    throw config_error("config.eval_snrs_db: must be nonempty for the mc "
                       "command");

  const CandidateGrid grid = config_grid(config);
  // Operating SNR is irrelevant here; evaluation noise is set per cell.
  const SensingModel model = model_for(config, grid, config.snr_db.front());

  std::vector<McDesign> designs;
  for (const auto& path : design_files) {
    LoadedDesign loaded = load_design_file(config, path);
    for (int x : loaded.mc.indices)
      if (x < 0 || x >= grid.size())
        throw config_error("design file " + path.string() +
                           " indexes outside the configured grid");
    designs.push_back(std::move(loaded.mc));
  }

  const std::vector<MseCell> table =
      mc_mse(model, designs, config.eval_snrs_db, config.trials, config.seed,
             threads);

  CsvFile csv({"design_label", "design_target_snr_db", "eval_snr_db",
               "trials", "mean_mse", "stderr_mse", "trace_posterior_cov"});
  for (const MseCell& cell : table)
    csv.add_row({cell.design_label, format_double(cell.design_target_snr_db),
                 format_double(cell.eval_snr_db), std::to_string(cell.trials),
                 format_double(cell.mean_mse), format_double(cell.stderr_mse),
                 format_double(cell.trace_posterior_cov)});
  csv.add_meta("tool", "arraydesign " + std::string(kVersion));
  csv.add_meta("config_hash", config.config_hash);
  csv.add_meta("seed", std::to_string(config.seed));

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path file = out_dir / "mse.csv";
  csv.write(file);
  out << "mc designs=" << designs.size()
      << " eval_snrs=" << config.eval_snrs_db.size()
      << " trials=" << config.trials << " -> " << file.string() << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const std::vector<VerifySuiteResult> results = run_verify_suites(config);
  bool ok = true;
  out << "suite,cases,failures,worst_margin\n";
  for (const VerifySuiteResult& r : results) {
    out << r.suite << ',' << r.cases << ',' << r.failures << ','
        << format_double(r.worst_margin) << "\n";
    if (r.failures > 0) ok = false;
  }
  return ok ? kExitOk : kExitVerifyFailure;
}

}  // namespace arraydesign
