// SPDX-License-Identifier: MIT
//
// Experiment drivers.  Paths are independent by construction (per-path
// streams), so the parallel runners fill per-path slots in any order and all
// reductions happen serially in path order afterwards.
#include "gittins/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gittins/index_levy.hpp"

namespace gittins {

namespace {

// Stream purpose ids: strategies use their enum order; the oracle uses a
// separate purpose so its paths never collide with experiment paths.
std::uint64_t strategy_stream_id(StrategyKind k) {
  switch (k) {
    case StrategyKind::gittins_index: return 0;
    case StrategyKind::myopic: return 1;
    case StrategyKind::continuous_gittins: return 2;
  }
  return 0;
}
constexpr std::uint64_t kOraclePurpose = 100;

constexpr std::int64_t kOracleEpochCap = 1000000;
constexpr double kOracleDiscountFloor = 1e-16;

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string joined_model_desc(const std::vector<ArmSpec>& arms) {
  std::string out;
  for (std::size_t j = 0; j < arms.size(); ++j) {
    if (j > 0) out += '+';
    out += describe(arms[j].model);
  }
  return out;
}

std::string joined_reward_desc(const std::vector<ArmSpec>& arms) {
  bool uniform = true;
  for (std::size_t j = 1; j < arms.size(); ++j) {
    if (arms[j].reward.kind != arms[0].reward.kind) uniform = false;
  }
  if (uniform) return to_string(arms[0].reward.kind);
  std::string out;
  for (std::size_t j = 0; j < arms.size(); ++j) {
    if (j > 0) out += '+';
    out += to_string(arms[j].reward.kind);
  }
  return out;
}

ExperimentResult run_impl(const ExperimentConfig& cfg, bool parallel) {
  if (cfg.n_paths < 1) {
    throw std::invalid_argument("run_experiment: n_paths must be >= 1");
  }
  if (cfg.strategies.empty()) {
    throw std::invalid_argument("run_experiment: no strategies configured");
  }

  ExperimentResult res;
  res.setting = infer_setting(cfg.episode.arms);
  res.model_desc = joined_model_desc(cfg.episode.arms);
  res.reward_desc = joined_reward_desc(cfg.episode.arms);
  res.n_paths = cfg.n_paths;
  res.seed = cfg.seed;

  const std::size_t n_arms = cfg.episode.arms.size();
  const std::int64_t n = cfg.n_paths;
  for (StrategyKind kind : cfg.strategies) {
    const Strategy strat = make_strategy(kind, cfg.episode);
    const std::uint64_t purpose = strategy_stream_id(kind);
    std::vector<double> vals(static_cast<std::size_t>(n));
    auto run_path = [&](std::int64_t i) {
      std::vector<RngStream> streams;
      streams.reserve(n_arms);
      for (std::size_t j = 0; j < n_arms; ++j) {
        streams.emplace_back(cfg.seed, purpose, static_cast<std::uint64_t>(i),
                             static_cast<std::uint64_t>(j));
      }
      return run_episode(cfg.episode, strat, streams);
    };
    if (parallel) {
      const int nt = resolve_threads(cfg.threads);
#ifdef _OPENMP
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64)
#endif
      for (std::int64_t i = 0; i < n; ++i) {
        vals[static_cast<std::size_t>(i)] = run_path(i);
      }
      (void)nt;
    } else {
      for (std::int64_t i = 0; i < n; ++i) {
        vals[static_cast<std::size_t>(i)] = run_path(i);
      }
    }
    // summarize needs two samples; a single-path run degenerates to the
    // episode value itself.
    SummaryStats stats;
    if (vals.size() >= 2) {
      stats = summarize(vals);
    } else {
      stats.mean = vals[0];
      stats.ci_lo = stats.ci_hi = vals[0];
    }
    res.rows.push_back({kind, stats});
  }
  return res;
}

OracleResult oracle_impl(const ArmSpec& arm, double x, double q,
                         std::int64_t n_paths, std::uint64_t seed, int threads,
                         bool parallel) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("mc_gittins_oracle: q must be positive");
  }
  if (n_paths < 1) {
    throw std::invalid_argument("mc_gittins_oracle: n_paths must be >= 1");
  }
  if (arm.model.reflected() && x < arm.model.barrier) {
    throw std::invalid_argument(
        "mc_gittins_oracle: start below the reflection barrier");
  }

  const std::size_t n = static_cast<std::size_t>(n_paths);
  std::vector<double> sum_a(n), sum_b(n);
  std::vector<unsigned char> capped(n, 0);

  auto run_path = [&](std::int64_t i) {
    RngStream rng(seed, kOraclePurpose, static_cast<std::uint64_t>(i), 0);
    ArmState st;
    st.arm = &arm;
    st.value = x;
    double a = arm.reward(x);
    double b = 1.0;
    bool hit_cap = true;
    for (std::int64_t k = 1; k <= kOracleEpochCap; ++k) {
      (void)advance_arm(st, rng);
      if (st.value <= x) {
        hit_cap = false;
        break;
      }
      const double disc = std::exp(-q * st.local_clock);
      if (disc < kOracleDiscountFloor) {
        hit_cap = false;
        break;
      }
      a += disc * arm.reward(st.value);
      b += disc;
    }
    sum_a[static_cast<std::size_t>(i)] = a;
    sum_b[static_cast<std::size_t>(i)] = b;
    capped[static_cast<std::size_t>(i)] = hit_cap ? 1 : 0;
  };

  if (parallel) {
    const int nt = resolve_threads(threads);
#ifdef _OPENMP
#pragma omp parallel for num_threads(nt) schedule(dynamic, 256)
#endif
    for (std::int64_t i = 0; i < n_paths; ++i) run_path(i);
    (void)nt;
  } else {
    for (std::int64_t i = 0; i < n_paths; ++i) run_path(i);
  }

  std::int64_t n_capped = 0;
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += sum_a[i];
    mean_b += sum_b[i];
    n_capped += capped[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  if (n_capped * 1000 > n_paths) {
    throw std::runtime_error(
        "mc_gittins_oracle: more than 0.1% of paths hit the epoch cap; the "
        "stopped functional does not decay for these parameters");
  }

  OracleResult out;
  out.estimate = mean_a / mean_b;
  out.capped_paths = n_capped;
  if (n_paths >= 2) {
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double da = sum_a[i] - mean_a;
      const double db = sum_b[i] - mean_b;
      saa += da * da;
      sbb += db * db;
      sab += da * db;
    }
    const double nm1 = static_cast<double>(n_paths - 1);
    saa /= nm1;
    sbb /= nm1;
    sab /= nm1;
    const double g = out.estimate;
    const double var = (saa - 2.0 * g * sab + g * g * sbb) /
                       static_cast<double>(n_paths);
    out.std_error = std::sqrt(std::max(0.0, var)) / mean_b;
  }
  return out;
}

}  // namespace

std::string to_string(SettingKind k) {
  switch (k) {
    case SettingKind::homogeneous: return "homogeneous";
    case SettingKind::partial: return "partial";
    case SettingKind::inhomogeneous: return "inhomogeneous";
  }
  return "?";
}

SettingKind infer_setting(const std::vector<ArmSpec>& arms) {
  if (arms.empty()) {
    throw std::invalid_argument("infer_setting: no arms");
  }
  bool same_kind = true;
  bool same_lambda = true;
  for (std::size_t j = 1; j < arms.size(); ++j) {
    if (arms[j].model.kind != arms[0].model.kind) same_kind = false;
    if (arms[j].lambda != arms[0].lambda) same_lambda = false;
  }
  if (!same_kind) return SettingKind::inhomogeneous;
  return same_lambda ? SettingKind::homogeneous : SettingKind::partial;
}

SummaryStats summarize(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("summarize: needs at least two samples");
  }
  SummaryStats s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / (n - 1.0));
  const double half = 1.96 * s.sd / std::sqrt(n);
  s.ci_lo = s.mean - half;
  s.ci_hi = s.mean + half;
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return run_impl(config, true);
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
  return run_impl(config, false);
}

OracleResult mc_gittins_oracle(const ArmSpec& arm, double x, double q,
                               std::int64_t n_paths, std::uint64_t seed,
                               int threads) {
  return oracle_impl(arm, x, q, n_paths, seed, threads, true);
}

OracleResult mc_gittins_oracle_serial(const ArmSpec& arm, double x, double q,
                                      std::int64_t n_paths,
                                      std::uint64_t seed) {
  return oracle_impl(arm, x, q, n_paths, seed, 0, false);
}

ConvergenceResult convergence_sweep(const ArmModel& model, double q,
                                    const RewardSpec& reward,
                                    const std::vector<double>& lambdas,
                                    const std::vector<double>& xs) {
  if (model.kind == ModelKind::ou) {
    throw std::invalid_argument(
        "convergence_sweep: requires a spectrally negative model");
  }
  if (lambdas.empty() || xs.empty()) {
    throw std::invalid_argument("convergence_sweep: empty grid");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) {
      throw std::invalid_argument("convergence_sweep: rates must be positive");
    }
  }

  const bool reflected = model.reflected();
  auto build = [&](double lambda) {
    return reflected
               ? build_levy_index_model(model.levy, q, lambda, reward,
                                        model.barrier)
               : build_levy_index_model(model.levy, q, lambda, reward);
  };

  ConvergenceResult res;
  res.lambdas = lambdas;
  res.xs = xs;
  res.gamma_lambda.resize(lambdas.size());
  res.gamma_inf.resize(xs.size());
  res.sup_distance.assign(lambdas.size(), 0.0);

  {
    const LevyIndexModel m0 = build(lambdas.front());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      res.gamma_inf[i] = gittins_continuous(m0, xs[i]);
    }
  }
  for (std::size_t li = 0; li < lambdas.size(); ++li) {
    const LevyIndexModel m = build(lambdas[li]);
    auto& row = res.gamma_lambda[li];
    row.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      row[i] = reflected ? gittins_rsnlp(m, xs[i]) : gittins_snlp(m, xs[i]);
      res.sup_distance[li] =
          std::max(res.sup_distance[li], std::abs(row[i] - res.gamma_inf[i]));
    }
  }
  return res;
}

void write_results_csv(std::ostream& os, const ExperimentResult& result) {
  os << "setting,model,reward,strategy,mean,sd,ci_lo,ci_hi,n_paths,seed\n";
  for (const StrategyResult& row : result.rows) {
    os << to_string(result.setting) << ',' << csv_field(result.model_desc)
       << ',' << csv_field(result.reward_desc) << ',' << to_string(row.strategy)
       << ',' << fmt17(row.stats.mean) << ',' << fmt17(row.stats.sd) << ','
       << fmt17(row.stats.ci_lo) << ',' << fmt17(row.stats.ci_hi) << ','
       << result.n_paths << ',' << result.seed << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const ArmModel& model,
                           const ConvergenceResult& result) {
  os << "model,lambda,x,gamma_lambda,gamma_inf\n";
  const std::string desc = csv_field(describe(model));
  for (std::size_t li = 0; li < result.lambdas.size(); ++li) {
    for (std::size_t i = 0; i < result.xs.size(); ++i) {
      os << desc << ',' << fmt17(result.lambdas[li]) << ','
         << fmt17(result.xs[i]) << ',' << fmt17(result.gamma_lambda[li][i])
         << ',' << fmt17(result.gamma_inf[i]) << '\n';
    }
  }
}

}  // namespace gittins
