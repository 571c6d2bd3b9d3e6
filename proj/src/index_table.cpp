// SPDX-License-Identifier: MIT
//
// Index-function construction: closed-form routing per model kind, table
// ranges derived from the arm's reachable set over one episode, and monotone
// piecewise-linear tabulation with an exact fallback outside the range.
#include "gittins/index_table.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "gittins/index_diffusion.hpp"
#include "gittins/index_levy.hpp"

namespace gittins {

namespace {

constexpr int kTablePoints = 400;

// Violations of table monotonicity beyond rounding noise indicate an
// evaluator bug rather than interpolation error, so they are fatal.
void enforce_monotone(std::vector<double>& ys) {
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (ys[i] < ys[i - 1]) {
      const double slack = 1e-9 * (1.0 + std::abs(ys[i - 1]));
      if (ys[i - 1] - ys[i] > slack) {
        throw std::runtime_error(
            "index table: non-monotone values beyond tolerance");
      }
      ys[i] = ys[i - 1];
    }
  }
}

struct TableRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Reachable range of the arm value over one episode of length `horizon`
// starting from 0: mean drift plus five standard deviations for the free
// models, the barrier as the lower end for reflected models, five stationary
// standard deviations for OU.
TableRange table_range(const ArmModel& m, double horizon) {
  const double T = std::max(horizon, 1.0);
  TableRange r;
  switch (m.kind) {
    case ModelKind::bm:
    case ModelKind::snlp:
    case ModelKind::rbm:
    case ModelKind::rsnlp: {
      const SnlpParams& p = m.levy;
      const double m1 = p.mu - p.ell / p.r;
      const double var = p.sigma * p.sigma + 2.0 * p.ell / (p.r * p.r);
      const double spread = 5.0 * std::sqrt(var * T);
      r.lo = std::min(0.0, m1 * T) - spread;
      r.hi = std::max(0.0, m1 * T) + spread;
      if (m.kind == ModelKind::rbm || m.kind == ModelKind::rsnlp) {
        r.lo = m.barrier;
        r.hi = std::max(r.hi, m.barrier + 1.0);
      }
      break;
    }
    case ModelKind::ou: {
      const double s = 5.0 / std::sqrt(2.0 * m.gamma);
      r.lo = -s;
      r.hi = s;
      break;
    }
  }
  return r;
}

void fill_table(IndexFunction& fn, const TableRange& range,
                const std::function<double(double)>& eval) {
  if (!(range.hi - range.lo > 1e-6)) return;
  fn.xs.resize(kTablePoints);
  fn.ys.resize(kTablePoints);
  const double step = (range.hi - range.lo) / (kTablePoints - 1);
  for (int i = 0; i < kTablePoints; ++i) {
    fn.xs[static_cast<std::size_t>(i)] = range.lo + step * i;
    fn.ys[static_cast<std::size_t>(i)] =
        eval(fn.xs[static_cast<std::size_t>(i)]);
  }
  enforce_monotone(fn.ys);
}

LevyIndexModel levy_model_for(const ArmModel& m, double q, double lambda,
                              const RewardSpec& reward) {
  switch (m.kind) {
    case ModelKind::bm:
      return build_levy_index_model(m.levy, q, lambda, reward);
    case ModelKind::snlp:
      return build_levy_index_model(m.levy, q, lambda, reward);
    case ModelKind::rbm:
    case ModelKind::rsnlp:
      return build_levy_index_model(m.levy, q, lambda, reward, m.barrier);
    case ModelKind::ou:
      break;
  }
  throw std::invalid_argument("no spectrally negative form for this model");
}

}  // namespace

double IndexFunction::operator()(double x) const {
  if (!has_table()) return exact(x);
  if (x < xs.front()) {
    return flat_below ? ys.front() : exact(x);
  }
  if (x > xs.back()) return exact(x);
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = std::min<std::size_t>(
      static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

IndexFunction make_gittins_index(const ArmSpec& arm, double q, double horizon,
                                 bool tabulate) {
  const ArmModel& m = arm.model;
  IndexFunction fn;
  fn.flat_below = m.reflected();

  if (m.kind == ModelKind::ou) {
    const DiffusionSpec spec = DiffusionSpec::OU(m.gamma);
    const double lambda = arm.lambda;
    const RewardSpec reward = arm.reward;
    fn.exact = [spec, q, lambda, reward](double x) {
      return gittins_diffusion(spec, q, lambda, reward, x);
    };
    if (tabulate) {
      const TableRange range = table_range(m, horizon);
      DiffusionIndexEvaluator ev(spec, q, lambda, reward, range.lo, range.hi);
      fill_table(fn, range, [&ev](double x) { return ev.gamma(x); });
    }
    return fn;
  }

  auto model = std::make_shared<LevyIndexModel>(
      levy_model_for(m, q, arm.lambda, arm.reward));
  const bool reflected = m.reflected();
  fn.exact = [model, reflected](double x) {
    return reflected ? gittins_rsnlp(*model, x) : gittins_snlp(*model, x);
  };
  if (tabulate && arm.reward.kind != RewardKind::identity) {
    fill_table(fn, table_range(m, horizon), fn.exact);
  }
  return fn;
}

IndexFunction make_continuous_index(const ArmSpec& arm, double q,
                                    double horizon, bool tabulate) {
  const ArmModel& m = arm.model;
  if (m.kind == ModelKind::rbm || m.kind == ModelKind::ou) {
    throw std::invalid_argument(
        "continuous-observation index requires a spectrally negative model "
        "(bm, snlp or rsnlp)");
  }
  IndexFunction fn;
  auto model = std::make_shared<LevyIndexModel>(
      levy_model_for(m, q, arm.lambda, arm.reward));
  fn.exact = [model](double x) { return gittins_continuous(*model, x); };
  if (tabulate && arm.reward.kind != RewardKind::identity) {
    fill_table(fn, table_range(m, horizon), fn.exact);
  }
  return fn;
}

IndexFunction make_myopic_index(const ArmSpec& arm) {
  IndexFunction fn;
  const RewardSpec reward = arm.reward;
  fn.exact = [reward](double x) { return reward(x); };
  return fn;
}

}  // namespace gittins
