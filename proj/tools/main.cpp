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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arraydesign/errors.hpp"
#include "arraydesign/pipeline.hpp"
#include "arraydesign/version.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  int threads = 1;
};

void attach_common(CLI::App* cmd, CommonOptions* options) {
  cmd->add_option("--config", options->config_path,
                  "Path to the JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", options->out_dir,
                  "Output directory (defaults to the config's output_dir)");
  cmd->add_option("--seed", options->seed,
                  "Override the config's random seed");
  cmd->add_option("--threads", options->threads,
                  "Worker threads for Monte-Carlo trials")
      ->check(CLI::PositiveNumber);
}

arraydesign::RunConfig load(const CommonOptions& options) {
  arraydesign::RunConfig config =
      arraydesign::load_run_config(options.config_path);
  if (options.seed) config.seed = *options.seed;
  return config;
}

std::filesystem::path out_dir(const CommonOptions& options,
                              const arraydesign::RunConfig& config) {
  return options.out_dir ? std::filesystem::path(*options.out_dir)
                         : std::filesystem::path(config.output_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensor-array placement by greedy information maximization"};
  app.set_version_flag("--version",
                       std::string(arraydesign::kVersion));
  app.require_subcommand(1);

  CommonOptions design_opts;
  CLI::App* design = app.add_subcommand(
      "design", "Select sensor positions and write design_snr<v>.csv");
  attach_common(design, &design_opts);

  CommonOptions bounds_opts;
  std::string bounds_design_file;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Recompute certificates for a design file into bounds.csv");
  attach_common(bounds, &bounds_opts);
  bounds->add_option("design_file", bounds_design_file, "design_snr<v>.csv")
      ->required()
      ->check(CLI::ExistingFile);

  CommonOptions mc_opts;
  std::vector<std::string> mc_design_files;
  CLI::App* mc = app.add_subcommand(
      "mc", "Monte-Carlo MSE cross table over design files into mse.csv");
  attach_common(mc, &mc_opts);
  mc->add_option("design_files", mc_design_files, "design_snr<v>.csv...")
      ->required()
      ->check(CLI::ExistingFile);

  CommonOptions verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run reduced-scale self-checks against the configuration");
  attach_common(verify, &verify_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? arraydesign::kExitOk : arraydesign::kExitConfigError;
  }

  try {
    if (design->parsed()) {
      const arraydesign::RunConfig config = load(design_opts);
      return arraydesign::cmd_design(config, out_dir(design_opts, config),
                                     std::cout);
    }
    if (bounds->parsed()) {
      const arraydesign::RunConfig config = load(bounds_opts);
      return arraydesign::cmd_bounds(config, bounds_design_file,
                                     out_dir(bounds_opts, config), std::cout);
    }
    if (mc->parsed()) {
      const arraydesign::RunConfig config = load(mc_opts);
      std::vector<std::filesystem::path> files(mc_design_files.begin(),
                                               mc_design_files.end());
      return arraydesign::cmd_mc(config, files, out_dir(mc_opts, config),
                                 mc_opts.threads, std::cout);
    }
    const arraydesign::RunConfig config = load(verify_opts);
    return arraydesign::cmd_verify(config, std::cout);
  } catch (const arraydesign::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return arraydesign::kExitConfigError;
  } catch (const arraydesign::numerical_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return arraydesign::kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return arraydesign::kExitConfigError;
  }
}
