// SPDX-License-Identifier: MIT
//
// Benchmark: OpenMP path runner versus the serial reference on a three-arm
// Brownian bandit.  Verifies both produce bit-identical summaries before
// reporting timings.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "gittins/experiments.hpp"

namespace {

using namespace gittins;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t n_paths = 2000;
  if (argc > 1) n_paths = std::atoll(argv[1]);
  if (n_paths < 2) n_paths = 2;

  ExperimentConfig cfg;
  cfg.episode.q = 0.5;
  cfg.episode.horizon = 50.0;
  for (double sigma : {1.0, 5.0, 10.0}) {
    cfg.episode.arms.push_back(
        ArmSpec{ArmModel::BM(sigma), 0.1, RewardSpec::identity(), 1e-3});
  }
  cfg.n_paths = n_paths;
  cfg.seed = 1;
  cfg.strategies = {StrategyKind::gittins_index, StrategyKind::myopic};

  std::printf("bench: %lld paths, 3 BM arms, strategies GI+Myopic\n",
              static_cast<long long>(n_paths));

  const auto t0 = Clock::now();
  const ExperimentResult serial = run_experiment_serial(cfg);
  const double t_serial = seconds_since(t0);

  const auto t1 = Clock::now();
  const ExperimentResult parallel = run_experiment(cfg);
  const double t_parallel = seconds_since(t1);

  bool identical = serial.rows.size() == parallel.rows.size();
  for (std::size_t i = 0; identical && i < serial.rows.size(); ++i) {
    identical = serial.rows[i].stats.mean == parallel.rows[i].stats.mean &&
                serial.rows[i].stats.sd == parallel.rows[i].stats.sd;
  }

  std::printf("serial    %8.3f s\n", t_serial);
  std::printf("parallel  %8.3f s\n", t_parallel);
  std::printf("speedup   %8.2fx\n", t_serial / t_parallel);
  std::printf("results   %s\n", identical ? "identical" : "MISMATCH");
  for (const StrategyResult& row : serial.rows) {
    std::printf("  %-8s mean %.6g  sd %.6g\n", to_string(row.strategy).c_str(),
                row.stats.mean, row.stats.sd);
  }
  return identical ? 0 : 1;
}
