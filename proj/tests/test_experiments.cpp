// SPDX-License-Identifier: MIT
//
// Experiment-driver tests: summary statistics, parallel/serial equivalence,
// stream seeding, the Monte Carlo index oracle (exactness on constant
// rewards, error signalling), CSV emission, and the rate-convergence sweep.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gittins/experiments.hpp"
#include "gittins/index_levy.hpp"
#include "gittins/rng.hpp"
#include "oracle_utils.hpp"

using namespace gittins;

namespace {

ArmSpec bm_arm(double sigma, double lambda, RewardSpec reward) {
  return ArmSpec{ArmModel::BM(sigma), lambda, std::move(reward), 1e-3};
}

// Minimal CSV line splitter honouring double-quote escaping.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

bool same_rows(const ExperimentResult& a, const ExperimentResult& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const SummaryStats &sa = a.rows[i].stats, &sb = b.rows[i].stats;
    if (a.rows[i].strategy != b.rows[i].strategy) return false;
    if (sa.mean != sb.mean || sa.sd != sb.sd || sa.ci_lo != sb.ci_lo ||
        sa.ci_hi != sb.ci_hi) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("summary statistics on a two-point sample") {
  const SummaryStats s = summarize({0.0, 2.0});
  CHECK(s.mean == doctest::Approx(1.0));
  CHECK(s.sd == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.ci_lo == doctest::Approx(1.0 - 1.96));
  CHECK(s.ci_hi == doctest::Approx(1.0 + 1.96));
  CHECK_THROWS_AS(static_cast<void>(summarize({1.0})), std::invalid_argument);
  CHECK_THROWS_AS(static_cast<void>(summarize({})), std::invalid_argument);
}

TEST_CASE("summary statistics agree with the independent helpers") {
  RngStream rs(5150, 60, 0, 0);
  std::vector<double> xs(500);
  for (double& x : xs) x = 3.0 + 2.0 * rs.normal();
  const SummaryStats s = summarize(xs);
  CHECK(s.mean == doctest::Approx(testutil::mean_of(xs)).epsilon(1e-14));
  CHECK(s.sd == doctest::Approx(testutil::sd_of(xs)).epsilon(1e-14));
  CHECK(s.ci_hi - s.ci_lo ==
        doctest::Approx(2.0 * 1.96 * testutil::se_of(xs)).epsilon(1e-12));
}

TEST_CASE("normal confidence intervals cover at roughly the nominal rate") {
  int covered = 0;
  for (int rep = 0; rep < 20; ++rep) {
    RngStream rs(7000, 61, static_cast<std::uint64_t>(rep), 0);
    std::vector<double> xs(400);
    for (double& x : xs) x = 3.0 + 2.0 * rs.normal();
    const SummaryStats s = summarize(xs);
    if (s.ci_lo <= 3.0 && 3.0 <= s.ci_hi) ++covered;
  }
  // 95% nominal; with 20 pinned batches anything below 14 would be broken.
  CHECK(covered >= 14);
}

TEST_CASE("setting inference from the arm list") {
  const ArmSpec a = bm_arm(1.0, 0.1, RewardSpec::identity());
  ArmSpec b = bm_arm(5.0, 0.1, RewardSpec::identity());
  CHECK(infer_setting({a, b}) == SettingKind::homogeneous);
  b.lambda = 0.2;
  CHECK(infer_setting({a, b}) == SettingKind::partial);
  const ArmSpec c{ArmModel::OU(1.0), 0.1, RewardSpec::identity(), 1e-3};
  CHECK(infer_setting({a, c}) == SettingKind::inhomogeneous);
  CHECK(infer_setting({a}) == SettingKind::homogeneous);
  CHECK_THROWS_AS(static_cast<void>(infer_setting({})), std::invalid_argument);
}

TEST_CASE("single-path experiment reproduces the bare episode value") {
  ExperimentConfig cfg;
  cfg.episode.q = 0.5;
  cfg.episode.horizon = 50.0;
  cfg.episode.arms = {bm_arm(1.0, 0.1, RewardSpec::identity()),
                      bm_arm(5.0, 0.1, RewardSpec::identity())};
  cfg.n_paths = 1;
  cfg.seed = 11;
  cfg.strategies = {StrategyKind::myopic};
  const ExperimentResult res = run_experiment_serial(cfg);
  REQUIRE(res.rows.size() == 1);

  // Replay the same streams by hand: purpose 1 is the myopic slot.
  const Strategy strat = make_strategy(StrategyKind::myopic, cfg.episode);
  std::vector<RngStream> streams;
  streams.emplace_back(11, 1, 0, 0);
  streams.emplace_back(11, 1, 0, 1);
  const double direct = run_episode(cfg.episode, strat, streams);
  CHECK(res.rows[0].stats.mean == direct);
  CHECK(res.rows[0].stats.sd == 0.0);
  CHECK(res.rows[0].stats.ci_lo == direct);
  CHECK(res.rows[0].stats.ci_hi == direct);
}

TEST_CASE("parallel and serial experiment runners agree bit for bit") {
  ExperimentConfig cfg;
  cfg.episode.q = 0.5;
  cfg.episode.horizon = 50.0;
  cfg.episode.arms = {bm_arm(1.0, 0.1, RewardSpec::identity()),
                      bm_arm(5.0, 0.1, RewardSpec::identity()),
                      bm_arm(10.0, 0.1, RewardSpec::identity())};
  cfg.n_paths = 200;
  cfg.seed = 4;
  cfg.strategies = {StrategyKind::gittins_index, StrategyKind::myopic};

  const ExperimentResult serial = run_experiment_serial(cfg);
  cfg.threads = 1;
  const ExperimentResult par1 = run_experiment(cfg);
  cfg.threads = 3;
  const ExperimentResult par3 = run_experiment(cfg);
  CHECK(same_rows(serial, par1));
  CHECK(same_rows(serial, par3));

  // The seed is part of the stream identity, so it must move the result.
  cfg.seed = 5;
  const ExperimentResult other = run_experiment(cfg);
  CHECK_FALSE(same_rows(serial, other));

  CHECK(serial.setting == SettingKind::homogeneous);
  CHECK(serial.model_desc == "BM(1)+BM(5)+BM(10)");
  CHECK(serial.reward_desc == "identity");
}

TEST_CASE("experiment validation") {
  ExperimentConfig cfg;
  cfg.episode.arms = {bm_arm(1.0, 0.1, RewardSpec::identity())};
  cfg.n_paths = 0;
  CHECK_THROWS_AS(static_cast<void>(run_experiment_serial(cfg)),
                  std::invalid_argument);
  cfg.n_paths = 10;
  cfg.strategies.clear();
  CHECK_THROWS_AS(static_cast<void>(run_experiment_serial(cfg)),
                  std::invalid_argument);
}

TEST_CASE("index oracle is exact on constant rewards") {
  // Numerator and denominator sums are proportional path by path, so the
  // ratio collapses to the constant up to accumulation rounding.
  const double c = -1.3;
  const ArmSpec arm = bm_arm(1.0, 0.4, RewardSpec::custom([=](double) {
    return c;
  }));
  const OracleResult res = mc_gittins_oracle_serial(arm, 0.0, 0.5, 500, 77);
  CHECK(std::abs(res.estimate - c) <= 1e-12);
  // Per-path numerators equal c times the denominators only up to the
  // rounding of ~50 accumulated terms, so the residual variance is of order
  // (N ulp)^2 rather than exactly zero.
  CHECK(res.std_error <= 1e-8);
  CHECK(res.capped_paths == 0);
}

TEST_CASE("index oracle matches the closed form within its standard error") {
  const ArmSpec arm = bm_arm(1.0, 0.1, RewardSpec::identity());
  const LevyIndexModel model = build_levy_index_model(
      arm.model.levy, 0.5, arm.lambda, arm.reward);
  const double closed = gittins_snlp(model, 0.0);
  const OracleResult res = mc_gittins_oracle_serial(arm, 0.0, 0.5, 4000, 2024);
  CHECK(res.std_error > 0.0);
  CHECK(std::abs(res.estimate - closed) <= 4.0 * res.std_error);
}

TEST_CASE("parallel and serial oracle runners agree bit for bit") {
  const ArmSpec arm = bm_arm(1.0, 0.1, RewardSpec::identity());
  const OracleResult s = mc_gittins_oracle_serial(arm, 0.3, 0.5, 1500, 9);
  const OracleResult p = mc_gittins_oracle(arm, 0.3, 0.5, 1500, 9, 3);
  CHECK(s.estimate == p.estimate);
  CHECK(s.std_error == p.std_error);
  CHECK(s.capped_paths == p.capped_paths);
}

TEST_CASE("index oracle signals non-decaying stopped functionals") {
  // Strong upward drift with a near-zero discount rate: the stopping time
  // and the discount floor are both effectively unreachable, every path hits
  // the epoch cap, and the estimate would be meaningless.
  const ArmSpec arm{ArmModel::SNLP(5.0, 1.0, 0.0, 1.0), 0.1,
                    RewardSpec::identity(), 1e-3};
  CHECK_THROWS_AS(
      static_cast<void>(mc_gittins_oracle_serial(arm, 0.0, 1e-12, 10, 1)),
      std::runtime_error);
}

TEST_CASE("oracle argument contracts") {
  const ArmSpec arm = bm_arm(1.0, 0.1, RewardSpec::identity());
  CHECK_THROWS_AS(
      static_cast<void>(mc_gittins_oracle_serial(arm, 0.0, 0.0, 10, 1)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      static_cast<void>(mc_gittins_oracle_serial(arm, 0.0, 0.5, 0, 1)),
      std::invalid_argument);
  const ArmSpec refl{ArmModel::RBM(-2.0, 1.0), 0.1, RewardSpec::identity(),
                     1e-3};
  CHECK_THROWS_AS(
      static_cast<void>(mc_gittins_oracle_serial(refl, -3.0, 0.5, 10, 1)),
      std::invalid_argument);
}

TEST_CASE("experiment results serialise with quoting and full precision") {
  ExperimentResult res;
  res.setting = SettingKind::inhomogeneous;
  res.model_desc = "BM(1)+SNLP(1,1,6,2)";
  res.reward_desc = "identity+sigmoid";
  res.n_paths = 10000;
  res.seed = 3;
  res.rows.push_back(
      {StrategyKind::gittins_index, SummaryStats{0.1, 0.2, 0.09, 0.11}});
  res.rows.push_back(
      {StrategyKind::myopic, SummaryStats{-1.5, 2.25, -1.6, -1.4}});

  std::ostringstream os;
  write_results_csv(os, res);
  const std::vector<std::string> rows = lines_of(os.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "setting,model,reward,strategy,mean,sd,ci_lo,ci_hi,n_paths,seed");

  const std::vector<std::string> r1 = split_csv(rows[1]);
  REQUIRE(r1.size() == 10);
  CHECK(r1[0] == "inhomogeneous");
  CHECK(r1[1] == "BM(1)+SNLP(1,1,6,2)");  // commas survive the quoting
  CHECK(r1[2] == "identity+sigmoid");
  CHECK(r1[3] == "GI");
  // %.17g fields parse back to the exact double that was written.
  CHECK(std::strtod(r1[4].c_str(), nullptr) == 0.1);
  CHECK(std::strtod(r1[5].c_str(), nullptr) == 0.2);
  CHECK(r1[8] == "10000");
  CHECK(r1[9] == "3");
  CHECK(split_csv(rows[2])[3] == "Myopic");

  // The raw line must keep the model inside one quoted field.
  CHECK(testutil::contains(rows[1], "\"BM(1)+SNLP(1,1,6,2)\""));
}

TEST_CASE("rate sweep: distances shrink monotonically towards the limit") {
  const std::vector<double> lambdas{1.0, 10.0, 100.0, 1000.0};
  const std::vector<double> xs{-2.0, -1.0, 0.0, 1.0, 2.0};
  const ConvergenceResult res = convergence_sweep(
      ArmModel::BM(1.0), 0.5, RewardSpec::identity(), lambdas, xs);

  REQUIRE(res.sup_distance.size() == 4);
  for (std::size_t i = 1; i < res.sup_distance.size(); ++i) {
    CHECK(res.sup_distance[i] < res.sup_distance[i - 1]);
  }
  CHECK(res.sup_distance.back() > 0.0);

  // The recorded limit values are the continuous-observation index.
  const LevyIndexModel m = build_levy_index_model(
      SnlpParams{0.0, 1.0, 0.0, 1.0}, 0.5, 1.0, RewardSpec::identity());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(res.gamma_inf[i] ==
          doctest::Approx(gittins_continuous(m, xs[i])).epsilon(1e-12));
    // Finite-rate indices sit strictly below the limit for every rate.
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      CHECK(res.gamma_lambda[li][i] < res.gamma_inf[i]);
    }
  }
}

TEST_CASE("rate sweep on a reflected model and the rejection paths") {
  const ConvergenceResult res = convergence_sweep(
      ArmModel::RSNLP(-10.0, 0.5, 1.0, 6.0, 2.0), 0.5, RewardSpec::identity(),
      {0.5, 5.0, 50.0}, {-10.0, -5.0, 0.0, 5.0});
  for (std::size_t i = 1; i < res.sup_distance.size(); ++i) {
    CHECK(res.sup_distance[i] < res.sup_distance[i - 1]);
  }

  CHECK_THROWS_AS(
      static_cast<void>(convergence_sweep(ArmModel::OU(1.0), 0.5,
                                          RewardSpec::identity(), {1.0},
                                          {0.0})),
      std::invalid_argument);
  CHECK_THROWS_AS(
      static_cast<void>(convergence_sweep(ArmModel::BM(1.0), 0.5,
                                          RewardSpec::identity(), {}, {0.0})),
      std::invalid_argument);
  CHECK_THROWS_AS(
      static_cast<void>(convergence_sweep(ArmModel::BM(1.0), 0.5,
                                          RewardSpec::identity(), {0.0},
                                          {0.0})),
      std::invalid_argument);
}

TEST_CASE("convergence rows serialise one grid point per line") {
  const ConvergenceResult res = convergence_sweep(
      ArmModel::BM(1.0), 0.5, RewardSpec::identity(), {1.0, 10.0},
      {0.0, 1.0, 2.0});
  std::ostringstream os;
  write_convergence_csv(os, ArmModel::BM(1.0), res);
  const std::vector<std::string> rows = lines_of(os.str());
  REQUIRE(rows.size() == 1 + 2 * 3);
  CHECK(rows[0] == "model,lambda,x,gamma_lambda,gamma_inf");
  const std::vector<std::string> r1 = split_csv(rows[1]);
  REQUIRE(r1.size() == 5);
  CHECK(r1[0] == "BM(1)");
  CHECK(std::strtod(r1[3].c_str(), nullptr) == res.gamma_lambda[0][0]);
  CHECK(std::strtod(r1[4].c_str(), nullptr) == res.gamma_inf[0]);
}
