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

#include "arraydesign/bayes.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "arraydesign/errors.hpp"

namespace arraydesign {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559005768;

void check_sensors(const SensingModel& model, std::span<const int> sensors) {
  std::unordered_set<int> seen;
  for (int x : sensors) {
    if (x < 0 || x >= model.grid().size())
      throw std::invalid_argument("bayes: sensor index out of range");
    if (!seen.insert(x).second)
      throw std::invalid_argument("bayes: duplicate sensor index");
  }
}

Eigen::MatrixXd sensor_kernel(const SensingModel& model,
                              std::span<const int> sensors) {
  const int n = static_cast<int>(sensors.size());
  Eigen::MatrixXd kernel(n, model.prior().mode_count());
  for (int i = 0; i < n; ++i)
    kernel.row(i) = kernel_row(
        model.grid().positions[static_cast<std::size_t>(sensors[i])],
        model.prior(), model.lambda());
  return kernel;
}

Eigen::VectorXd prior_variances(const PriorSpec& prior) {
  return Eigen::Map<const Eigen::VectorXd>(
      prior.variances.data(), static_cast<long>(prior.variances.size()));
}

// Shared per-(design, noise level) machinery for posterior means without
// materializing the mode-by-mode covariance.
struct PosteriorSolver {
  Eigen::MatrixXd kernel;       // |S| x modes
  Eigen::MatrixXd kernel_prior; // kernel * diag(variances)
  Eigen::LLT<Eigen::MatrixXd> llt;  // of kernel_prior * kernel^T + noise I
  double trace_cov = 0.0;

  PosteriorSolver(const SensingModel& model, std::span<const int> sensors,
                  double noise_var) {
    const Eigen::VectorXd variances = prior_variances(model.prior());
    kernel = sensor_kernel(model, sensors);
    kernel_prior = kernel * variances.asDiagonal();
    Eigen::MatrixXd gram = kernel_prior * kernel.transpose();
    gram = 0.5 * (gram + gram.transpose().eval());
    gram.diagonal().array() += noise_var;
    llt.compute(gram);
    if (llt.info() != Eigen::Success)
      throw numerical_error("bayes: measurement covariance is not PD");

    // trace of the posterior covariance: sum_m sigma_m^2 minus the
    // explained part, column by column, without the modes x modes matrix.
    trace_cov = variances.sum();
    if (!sensors.empty()) {
      const Eigen::MatrixXd solved = llt.solve(kernel);  // Sigma^-1 K
      for (long j = 0; j < kernel.cols(); ++j) {
        const double quad = kernel.col(j).dot(solved.col(j));
        trace_cov -= variances[j] * variances[j] * quad;
      }
    }
  }

  // Conditional mean given measurements: D K^T Sigma^-1 f, with the real
  // solve applied to the real and imaginary parts separately.
  Eigen::VectorXcd mean(const Eigen::VectorXcd& measurements,
                        const Eigen::VectorXd& variances) const {
    const Eigen::VectorXd re = llt.solve(measurements.real());
    const Eigen::VectorXd im = llt.solve(measurements.imag());
    Eigen::VectorXcd out(kernel.cols());
    const Eigen::VectorXd mre = kernel.transpose() * re;
    const Eigen::VectorXd mim = kernel.transpose() * im;
    out.real() = variances.cwiseProduct(mre);
    out.imag() = variances.cwiseProduct(mim);
    return out;
  }
};

}  // namespace

SceneSample sample_scene(const PriorSpec& prior, RngStream& rng) {
  SceneSample scene;
  scene.coeffs.resize(prior.mode_count());
  for (int j = 0; j < prior.mode_count(); ++j)
    scene.coeffs[j] =
        rng.next_complex_normal(prior.variances[static_cast<std::size_t>(j)]);
  return scene;
}

Eigen::VectorXcd simulate_measurements(const SensingModel& model,
                                       std::span<const int> sensors,
                                       const SceneSample& scene,
                                       RngStream& rng) {
  check_sensors(model, sensors);
  if (scene.coeffs.size() != model.prior().mode_count())
    throw std::invalid_argument("bayes: scene size mismatch");

  const Eigen::MatrixXd kernel = sensor_kernel(model, sensors);
  Eigen::VectorXcd out(sensors.size());
  out.real() = kernel * scene.coeffs.real();
  out.imag() = kernel * scene.coeffs.imag();
  for (long i = 0; i < out.size(); ++i)
    out[i] += rng.next_complex_normal(model.noise_var());
  return out;
}

PosteriorResult posterior(const SensingModel& model,
                          std::span<const int> sensors,
                          const Eigen::VectorXcd& measurements) {
  check_sensors(model, sensors);
  if (measurements.size() != static_cast<long>(sensors.size()))
    throw std::invalid_argument("bayes: measurement length mismatch");

  const Eigen::VectorXd variances = prior_variances(model.prior());
  PosteriorResult result;

  if (sensors.empty()) {
    result.mean = Eigen::VectorXcd::Zero(variances.size());
    result.cov = variances.asDiagonal();
    result.trace_cov = variances.sum();
    result.logdet_cov = variances.array().log().sum();
    return result;
  }

  const PosteriorSolver solver(model, sensors, model.noise_var());
  result.mean = solver.mean(measurements, variances);
  result.trace_cov = solver.trace_cov;

  // cov = D - D K^T Sigma^-1 K D, symmetrized against rounding.
  const Eigen::MatrixXd solved = solver.llt.solve(solver.kernel_prior);
  result.cov = Eigen::MatrixXd(variances.asDiagonal()) -
               solver.kernel_prior.transpose() * solved;
  result.cov = 0.5 * (result.cov + result.cov.transpose().eval());

  // log det via the measurement-space identity:
  // log det(posterior) = sum_m log sigma_m^2 + |S| log noise - log det Sigma.
  double logdet_meas = 0.0;
  const auto& l = solver.llt.matrixLLT();
  for (long i = 0; i < l.rows(); ++i) logdet_meas += std::log(l(i, i));
  logdet_meas *= 2.0;
  result.logdet_cov = variances.array().log().sum() +
                      double(sensors.size()) * std::log(model.noise_var()) -
                      logdet_meas;
  return result;
}

double scene_mse(const SceneSample& truth, const Eigen::VectorXcd& estimate) {
  if (truth.coeffs.size() != estimate.size())
    throw std::invalid_argument("bayes: estimate length mismatch");
  return (truth.coeffs - estimate).squaredNorm();
}

Eigen::VectorXcd synthesize_scene(const SceneSample& scene,
                                  const Eigen::VectorXd& angles) {
  const int modes = static_cast<int>(scene.coeffs.size());
  const int m_half = (modes - 1) / 2;
  Eigen::VectorXcd field(angles.size());
  for (long i = 0; i < angles.size(); ++i) {
    const std::complex<double> step(std::cos(kTwoPi * angles[i]),
                                    std::sin(kTwoPi * angles[i]));
    // Start at m = -m_half and walk the unit-circle powers.
    std::complex<double> phase = std::pow(step, -m_half);
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < modes; ++j) {
      acc += scene.coeffs[j] * phase;
      phase *= step;
    }
    field[i] = acc;
  }
  return field;
}

std::vector<MseCell> mc_mse(const SensingModel& model,
                            const std::vector<McDesign>& designs,
                            const std::vector<double>& eval_snrs_db,
                            int trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("mc: trials must be >= 1");
  if (designs.empty()) throw std::invalid_argument("mc: no designs given");
  if (eval_snrs_db.empty())
    throw std::invalid_argument("mc: no evaluation SNRs given");
  for (const McDesign& d : designs) check_sensors(model, d.indices);
  for (double s : eval_snrs_db)
    if (!std::isfinite(s))
      throw std::invalid_argument("mc: eval SNR must be finite");

  struct Cell {
    const McDesign* design;
    double eval_snr_db;
    double noise_var;
    PosteriorSolver solver;
  };

  const Eigen::VectorXd variances = prior_variances(model.prior());
  std::vector<Cell> cells;
  cells.reserve(designs.size() * eval_snrs_db.size());
  for (const McDesign& d : designs) {
    for (double s : eval_snrs_db) {
      const double noise_var =
          noise_var_for_snr(s, model.budget_ref(), model.prior().total_power);
      cells.push_back(Cell{&d, s, noise_var,
                           PosteriorSolver(model, d.indices, noise_var)});
    }
  }

  // mse[c][t]: written by exactly one worker, reduced in trial order below.
  std::vector<std::vector<double>> mse(
      cells.size(), std::vector<double>(static_cast<std::size_t>(trials)));

  const auto run_range = [&](int t_begin, int t_end) {
    for (int t = t_begin; t < t_end; ++t) {
      RngStream scene_rng(seed, static_cast<std::uint64_t>(t));
      const SceneSample scene = sample_scene(model.prior(), scene_rng);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        const auto n_sensors = cell.design->indices.size();
        // Noise is named by (trial, eval SNR) only, so designs share it.
        RngStream noise_rng(
            seed, static_cast<std::uint64_t>(t),
            std::bit_cast<std::uint64_t>(cell.eval_snr_db));
        Eigen::VectorXcd meas(n_sensors);
        meas.real() = cell.solver.kernel * scene.coeffs.real();
        meas.imag() = cell.solver.kernel * scene.coeffs.imag();
        for (long i = 0; i < meas.size(); ++i)
          meas[i] += noise_rng.next_complex_normal(cell.noise_var);
        const Eigen::VectorXcd est = cell.solver.mean(meas, variances);
        mse[c][static_cast<std::size_t>(t)] =
            (scene.coeffs - est).squaredNorm();
      }
    }
  };

  const int workers = std::max(1, std::min(threads, trials));
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int t_begin = w * chunk;
      const int t_end = std::min(trials, t_begin + chunk);
      if (t_begin >= t_end) break;
      pool.emplace_back([&, t_begin, t_end] {
        try {
          run_range(t_begin, t_end);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<MseCell> table;
  table.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    MseCell out;
    out.design_label = cells[c].design->label;
    out.design_target_snr_db = cells[c].design->target_snr_db;
    out.eval_snr_db = cells[c].eval_snr_db;
    out.trials = trials;
    double sum = 0.0;
    for (double v : mse[c]) sum += v;
    out.mean_mse = sum / double(trials);
    double sq = 0.0;
    for (double v : mse[c]) sq += (v - out.mean_mse) * (v - out.mean_mse);
    out.stderr_mse =
        trials > 1 ? std::sqrt(sq / (double(trials) * double(trials - 1)))
                   : 0.0;
    out.trace_posterior_cov = cells[c].solver.trace_cov;
    table.push_back(std::move(out));
  }
  return table;
}

}  // namespace arraydesign
