// SPDX-License-Identifier: MIT
//
// Command-line interface: closed-form index evaluation, experiment runs from
// JSON configs, Monte Carlo oracle validation, convergence sweeps, and a
// self-check suite.  Exit codes: 0 success, 2 configuration/validation
// failure, 3 computational failure.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gittins/config.hpp"
#include "gittins/experiments.hpp"
#include "gittins/index_diffusion.hpp"
#include "gittins/index_levy.hpp"
#include "gittins/index_table.hpp"
#include "gittins/quadrature.hpp"
#include "gittins/special.hpp"

namespace {

using namespace gittins;

ArmModel model_from_args(const std::string& name,
                         const std::vector<double>& params) {
  const ModelKind kind = parse_model_kind(name);
  auto need = [&](std::size_t n, const char* sig) {
    if (params.size() != n) {
      throw std::invalid_argument("model '" + name + "' expects --params " +
                                  sig);
    }
  };
  switch (kind) {
    case ModelKind::bm:
      need(1, "sigma");
      return ArmModel::BM(params[0]);
    case ModelKind::rbm:
      need(2, "barrier,sigma");
      return ArmModel::RBM(params[0], params[1]);
    case ModelKind::ou:
      need(1, "gamma");
      return ArmModel::OU(params[0]);
    case ModelKind::snlp:
      need(4, "mu,sigma,ell,r");
      return ArmModel::SNLP(params[0], params[1], params[2], params[3]);
    case ModelKind::rsnlp:
      need(5, "barrier,mu,sigma,ell,r");
      return ArmModel::RSNLP(params[0], params[1], params[2], params[3],
                             params[4]);
  }
  throw std::invalid_argument("unknown model '" + name + "'");
}

bool has_continuous_limit(ModelKind kind) {
  return kind == ModelKind::bm || kind == ModelKind::snlp ||
         kind == ModelKind::rsnlp;
}

int run_index(const ArmSpec& arm, double q, const std::vector<double>& xs) {
  const IndexFunction gi = make_gittins_index(arm, q, 0.0, false);
  IndexFunction cts;
  const bool with_cts = has_continuous_limit(arm.model.kind);
  if (with_cts) cts = make_continuous_index(arm, q, 0.0, false);

  std::printf("# model %s  q %.6g  lambda %.6g  reward %s\n",
              describe(arm.model).c_str(), q, arm.lambda,
              to_string(arm.reward.kind).c_str());
  std::printf("%14s %14s %14s\n", "x", "gittins", "continuous");
  for (double x : xs) {
    if (with_cts) {
      std::printf("%14.6g %14.6g %14.6g\n", x, gi(x), cts(x));
    } else {
      std::printf("%14.6g %14.6g %14s\n", x, gi(x), "n/a");
    }
  }
  return 0;
}

int run_simulate(ExperimentConfig cfg, const std::string& out_path) {
  const ExperimentResult res = run_experiment(cfg);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + out_path + "'");
  }
  write_results_csv(out, res);
  out.close();

  std::printf("# setting %s  model %s  reward %s  paths %lld  seed %llu\n",
              to_string(res.setting).c_str(), res.model_desc.c_str(),
              res.reward_desc.c_str(), static_cast<long long>(res.n_paths),
              static_cast<unsigned long long>(res.seed));
  std::printf("%-8s %12s %12s %12s %12s\n", "strategy", "mean", "sd", "ci_lo",
              "ci_hi");
  for (const StrategyResult& row : res.rows) {
    std::printf("%-8s %12.6g %12.6g %12.6g %12.6g\n",
                to_string(row.strategy).c_str(), row.stats.mean, row.stats.sd,
                row.stats.ci_lo, row.stats.ci_hi);
  }
  std::printf("# wrote %s\n", out_path.c_str());
  return 0;
}

int run_oracle(const ArmSpec& arm, double q, double x, std::int64_t paths,
               std::uint64_t seed, int threads) {
  const IndexFunction gi = make_gittins_index(arm, q, 0.0, false);
  const double closed = gi(x);
  const OracleResult mc = mc_gittins_oracle(arm, x, q, paths, seed, threads);

  // Reflected models simulate on a grid; allow for the O(sqrt(step))
  // reflection bias on top of the statistical tolerance.
  double tol = 3.0 * mc.std_error;
  if (arm.model.reflected()) tol += 0.05 * std::sqrt(arm.grid_step);
  const double diff = std::abs(closed - mc.estimate);
  const bool pass = diff <= tol;

  std::printf("closed-form   %.6g\n", closed);
  std::printf("mc estimate   %.6g\n", mc.estimate);
  std::printf("se            %.6g\n", mc.std_error);
  std::printf("|difference|  %.6g\n", diff);
  std::printf("tolerance     %.6g\n", tol);
  std::printf("capped paths  %lld\n", static_cast<long long>(mc.capped_paths));
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 3;
}

int run_converge(const ArmModel& model, double q, const RewardSpec& reward,
                 const std::vector<double>& lambdas, double x_min,
                 double x_max, int x_count, const std::string& out_path) {
  if (x_count < 2 || !(x_max > x_min)) {
    throw std::invalid_argument("converge: need x_max > x_min and >= 2 points");
  }
  std::vector<double> xs(static_cast<std::size_t>(x_count));
  for (int i = 0; i < x_count; ++i) {
    xs[static_cast<std::size_t>(i)] =
        x_min + (x_max - x_min) * i / (x_count - 1);
  }
  const ConvergenceResult res = convergence_sweep(model, q, reward, lambdas, xs);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + out_path + "'");
  }
  write_convergence_csv(out, model, res);
  out.close();

  std::printf("# model %s  q %.6g  reward %s\n", describe(model).c_str(), q,
              to_string(reward.kind).c_str());
  std::printf("%14s %22s\n", "lambda", "sup|gamma-gamma_inf|");
  for (std::size_t i = 0; i < res.lambdas.size(); ++i) {
    std::printf("%14.6g %22.6g\n", res.lambdas[i], res.sup_distance[i]);
  }
  std::printf("# wrote %s\n", out_path.c_str());
  return 0;
}

int run_selfcheck() {
  int failures = 0;
  auto report = [&failures](const char* name, bool ok) {
    std::printf("selfcheck: %-28s %s\n", name, ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
  };
  auto close_rel = [](double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
  };

  const SnlpParams p{1.0, 1.0, 6.0, 2.0};
  const double q = 0.5, lambda = 0.1;

  {  // Laplace exponent root residuals (analytic continuation below -r)
    const ScaleModel sm = build_scale_model(p, q);
    auto psi_ac = [&p](double t) {
      return p.mu * t + 0.5 * p.sigma * p.sigma * t * t -
             p.ell * t / (p.r + t);
    };
    bool ok = std::abs(laplace_exponent(p, sm.phi_q) - q) <= 1e-10 * (1.0 + q);
    for (int i = 0; i < sm.num_terms; ++i) {
      const double xi = sm.xi[static_cast<std::size_t>(i)];
      ok = ok && std::abs(psi_ac(-xi) - q) <= 1e-8 * (1.0 + q + xi * xi);
    }
    report("scale-roots", ok);
  }
  {  // observed-chain increment transforms are probability transforms at 0
    const LevyIndexModel m =
        build_levy_index_model(p, q, lambda, RewardSpec::identity());
    const bool ok = close_rel(mu_transform_sn(m, 0.0), 1.0, 1e-12) &&
                    close_rel(mu_transform_sp(p, q, lambda, 0.0), 1.0, 1e-12);
    report("transform-mass", ok);
  }
  {  // two-sided scale transform versus direct quadrature
    const ScaleModel sm = build_scale_model(p, q);
    const double s = sm.phi_q + 1.0;
    const double direct = integrate_adaptive(
        [&](double y) { return std::exp(-s * y) * w_scale(sm, y); }, 0.0,
        60.0, QuadratureOptions{1e-13, 1e-11, 8000});
    const double closed = 1.0 / (laplace_exponent(p, s) - q);
    report("scale-laplace", close_rel(direct, closed, 1e-7));
  }
  {  // reward <= index <= continuous limit
    const LevyIndexModel m =
        build_levy_index_model(p, q, lambda, RewardSpec::identity());
    bool ok = true;
    for (double x : {-2.0, 0.0, 1.5}) {
      const double g = gittins_snlp(m, x);
      ok = ok && g >= x - 1e-12 && g <= gittins_continuous(m, x) + 1e-12;
    }
    report("index-sandwich", ok);
  }
  {  // diffusion evaluator agrees with the jump-free closed form
    const SnlpParams bm{0.0, 1.0, 0.0, 1.0};
    const LevyIndexModel m =
        build_levy_index_model(bm, q, lambda, RewardSpec::identity());
    const double via_levy = gittins_snlp(m, 0.0);
    const double via_diff = gittins_diffusion(DiffusionSpec::BM(1.0), q,
                                              lambda, RewardSpec::identity(),
                                              0.0);
    report("diffusion-vs-levy", close_rel(via_levy, via_diff, 1e-6));
  }
  {  // ratio estimator degeneracy for constant rewards
    ArmSpec arm;
    arm.model = ArmModel::BM(1.0);
    arm.lambda = lambda;
    arm.reward = RewardSpec::custom([](double) { return 2.5; });
    const OracleResult mc = mc_gittins_oracle(arm, 0.0, q, 200, 11);
    report("constant-reward-oracle",
           std::abs(mc.estimate - 2.5) <= 1e-12 && mc.std_error <= 1e-8);
  }
  {  // determinism: parallel == serial, and repeated runs identical
    ExperimentConfig cfg;
    cfg.episode.arms = {ArmSpec{ArmModel::BM(1.0), 0.1,
                                RewardSpec::identity(), 1e-3}};
    cfg.episode.q = 0.5;
    cfg.episode.horizon = 10.0;
    cfg.n_paths = 50;
    cfg.seed = 3;
    cfg.strategies = {StrategyKind::gittins_index};
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);
    const ExperimentResult c = run_experiment_serial(cfg);
    report("determinism",
           a.rows[0].stats.mean == b.rows[0].stats.mean &&
               a.rows[0].stats.mean == c.rows[0].stats.mean);
  }
  {  // parabolic cylinder value D_{-1}(0) = sqrt(pi/2)
    report("pcf-value",
           close_rel(pcf(1.0, 0.0), std::sqrt(std::numbers::pi / 2.0), 1e-10));
  }

  if (failures > 0) {
    std::printf("selfcheck: %d failure(s)\n", failures);
    return 3;
  }
  std::printf("selfcheck: all checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-form Gittins indices for Levy and diffusion bandit "
               "arms, with Monte Carlo experiment drivers"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::int64_t paths = 10000;
  int threads = 0;
  double grid_step = 1e-3;
  auto* opt_seed = app.add_option("--seed", seed, "Random seed");
  auto* opt_paths = app.add_option("--paths", paths, "Monte Carlo path count");
  app.add_option("--threads", threads,
                 "Worker threads (0 = all available)");
  auto* opt_grid =
      app.add_option("--grid-step", grid_step,
                     "Grid step for reflected-path simulation");

  std::string model_name;
  std::vector<double> params;
  double q = 0.5;
  double lambda = 0.1;
  std::string reward_name = "identity";

  auto add_model_opts = [&](CLI::App* sub, bool with_lambda) {
    sub->add_option("--model", model_name, "bm | rbm | ou | snlp | rsnlp")
        ->required();
    sub->add_option("--params", params,
                    "Model parameters (comma separated; bm: sigma, rbm: "
                    "barrier,sigma, ou: gamma, snlp: mu,sigma,ell,r, rsnlp: "
                    "barrier,mu,sigma,ell,r)")
        ->delimiter(',');
    sub->add_option("--q", q, "Discount rate");
    if (with_lambda) {
      sub->add_option("--lambda", lambda, "Observation rate");
    }
    sub->add_option("--reward", reward_name, "identity | sigmoid | softplus");
  };

  auto* sub_index =
      app.add_subcommand("index", "Evaluate the Gittins index at given points");
  sub_index->fallthrough();
  std::vector<double> xs;
  add_model_opts(sub_index, true);
  sub_index->add_option("--x", xs, "Evaluation points (comma separated)")
      ->delimiter(',')
      ->required();

  auto* sub_simulate = app.add_subcommand(
      "simulate", "Run bandit experiments from a JSON config");
  sub_simulate->fallthrough();
  std::string config_path;
  std::string out_path = "results.csv";
  sub_simulate->add_option("config", config_path, "JSON configuration file")
      ->required();
  sub_simulate->add_option("--out", out_path, "Output CSV path");

  auto* sub_oracle = app.add_subcommand(
      "oracle", "Validate the closed form against the Monte Carlo estimator");
  sub_oracle->fallthrough();
  double oracle_x = 0.0;
  add_model_opts(sub_oracle, true);
  sub_oracle->add_option("--x", oracle_x, "Starting state")->required();

  auto* sub_converge = app.add_subcommand(
      "converge", "Sweep observation rates towards the continuous limit");
  sub_converge->fallthrough();
  std::vector<double> lambdas = {1.0, 10.0, 100.0, 1000.0};
  double x_min = -2.0, x_max = 2.0;
  int x_count = 50;
  std::string converge_out = "convergence.csv";
  add_model_opts(sub_converge, false);
  sub_converge->add_option("--lambdas", lambdas, "Observation rates")
      ->delimiter(',');
  sub_converge->add_option("--x-min", x_min, "Grid lower end");
  sub_converge->add_option("--x-max", x_max, "Grid upper end");
  sub_converge->add_option("--x-count", x_count, "Grid size");
  sub_converge->add_option("--out", converge_out, "Output CSV path");

  auto* sub_selfcheck =
      app.add_subcommand("selfcheck", "Run the built-in invariant suite");
  sub_selfcheck->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sub_index->parsed() || sub_oracle->parsed()) {
      ArmSpec arm;
      arm.model = model_from_args(model_name, params);
      arm.lambda = lambda;
      arm.reward = parse_reward(reward_name);
      arm.grid_step = grid_step;
      if (!(lambda > 0.0)) {
        throw std::invalid_argument("--lambda must be positive");
      }
      if (sub_index->parsed()) return run_index(arm, q, xs);
      return run_oracle(arm, q, oracle_x, paths, seed, threads);
    }
    if (sub_simulate->parsed()) {
      ExperimentConfig cfg = load_config_file(config_path);
      if (opt_seed->count() > 0) cfg.seed = seed;
      if (opt_paths->count() > 0) cfg.n_paths = paths;
      if (opt_grid->count() > 0) {
        for (ArmSpec& arm : cfg.episode.arms) arm.grid_step = grid_step;
      }
      cfg.threads = threads;
      if (cfg.n_paths < 1) {
        throw std::invalid_argument("--paths must be >= 1");
      }
      return run_simulate(std::move(cfg), out_path);
    }
    if (sub_converge->parsed()) {
      const ArmModel model = model_from_args(model_name, params);
      return run_converge(model, q, parse_reward(reward_name), lambdas, x_min,
                          x_max, x_count, converge_out);
    }
    return run_selfcheck();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
