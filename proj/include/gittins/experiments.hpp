// SPDX-License-Identifier: MIT
//
// Experiment drivers: repeated bandit episodes with per-path random streams
// (parallelised over paths with a serial reference runner), the Monte Carlo
// estimator of the Gittins index used to validate the closed forms, the
// lambda-convergence sweep, and the CSV emitters.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gittins/arm.hpp"
#include "gittins/bandit.hpp"

namespace gittins {

// Arm-set shape: one observation rate and one model family (homogeneous),
// one family with differing rates (partial), or mixed families
// (inhomogeneous).
enum class SettingKind { homogeneous, partial, inhomogeneous };

[[nodiscard]] std::string to_string(SettingKind k);
[[nodiscard]] SettingKind infer_setting(const std::vector<ArmSpec>& arms);

struct SummaryStats {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n - 1 divisor)
  double ci_lo = 0.0;
  double ci_hi = 0.0;  // mean +/- 1.96 sd / sqrt(n)
};

// Mean, sample standard deviation and normal 95% confidence interval.
[[nodiscard]] SummaryStats summarize(const std::vector<double>& values);

struct ExperimentConfig {
  EpisodeConfig episode{};
  std::int64_t n_paths = 10000;
  std::uint64_t seed = 1;
  std::vector<StrategyKind> strategies{StrategyKind::gittins_index,
                                       StrategyKind::myopic};
  int threads = 0;  // <= 0: all available
};

struct StrategyResult {
  StrategyKind strategy = StrategyKind::gittins_index;
  SummaryStats stats{};
};

struct ExperimentResult {
  SettingKind setting = SettingKind::homogeneous;
  std::string model_desc;
  std::string reward_desc;
  std::int64_t n_paths = 0;
  std::uint64_t seed = 0;
  std::vector<StrategyResult> rows;
};

// Runs every configured strategy over n_paths independent episodes.  Each
// (strategy, path, arm) triple has its own random stream, so results are
// byte-identical for any thread count; run_experiment_serial executes the
// same work on one thread and is kept as the reference implementation.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& config);
[[nodiscard]] ExperimentResult run_experiment_serial(
    const ExperimentConfig& config);

struct OracleResult {
  double estimate = 0.0;
  double std_error = 0.0;       // delta-method standard error of the ratio
  std::int64_t capped_paths = 0;
};

// Monte Carlo Gittins estimate at x: ratio of the mean discounted reward sum
// to the mean discounted count over paths stopped at the first observation at
// or below x (or when the discount factor falls below 1e-16).  Throws
// std::runtime_error if more than 0.1% of paths exhaust the epoch cap.
[[nodiscard]] OracleResult mc_gittins_oracle(const ArmSpec& arm, double x,
                                             double q, std::int64_t n_paths,
                                             std::uint64_t seed,
                                             int threads = 0);
[[nodiscard]] OracleResult mc_gittins_oracle_serial(const ArmSpec& arm,
                                                    double x, double q,
                                                    std::int64_t n_paths,
                                                    std::uint64_t seed);

struct ConvergenceResult {
  std::vector<double> lambdas;
  std::vector<double> xs;
  std::vector<std::vector<double>> gamma_lambda;  // [lambda][x]
  std::vector<double> gamma_inf;                  // [x]
  std::vector<double> sup_distance;               // [lambda]
};

// Index values over an x-grid for each observation rate, together with the
// continuous-observation limit and per-rate sup distances.  Defined for the
// spectrally negative models (bm/snlp/rbm/rsnlp); rejects ou.
[[nodiscard]] ConvergenceResult convergence_sweep(
    const ArmModel& model, double q, const RewardSpec& reward,
    const std::vector<double>& lambdas, const std::vector<double>& xs);

void write_results_csv(std::ostream& os, const ExperimentResult& result);
void write_convergence_csv(std::ostream& os, const ArmModel& model,
                           const ConvergenceResult& result);

}  // namespace gittins
