// SPDX-License-Identifier: MIT
//
// Transition sampling for the arm models.  All draws come from the caller's
// stream so that a path is reproducible from its stream id alone.
#include "gittins/pathsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gittins {

namespace {

void validate_levy(const SnlpParams& p) {
  if (!(p.sigma > 0.0)) {
    throw std::invalid_argument("snlp: sigma must be positive");
  }
  if (!(p.ell >= 0.0)) {
    throw std::invalid_argument("snlp: ell must be nonnegative");
  }
  if (!(p.r > 0.0)) {
    throw std::invalid_argument("snlp: r must be positive");
  }
}

// Sum of `count` iid Exp(r) jump sizes as a single Gamma(count, 1/r) draw.
double jump_sum(std::int64_t count, double r, RngStream& rng) {
  if (count <= 0) return 0.0;
  std::gamma_distribution<double> gamma(static_cast<double>(count), 1.0 / r);
  return gamma(rng.engine());
}

}  // namespace

double sample_holding(double lambda, RngStream& rng) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("sample_holding: lambda must be positive");
  }
  return rng.exponential(lambda);
}

double snlp_increment(const SnlpParams& p, double dt, RngStream& rng) {
  validate_levy(p);
  if (!(dt > 0.0)) {
    throw std::domain_error("snlp_increment: dt must be positive");
  }
  double inc = p.mu * dt + p.sigma * std::sqrt(dt) * rng.normal();
  if (p.ell > 0.0) {
    std::poisson_distribution<std::int64_t> pois(p.ell * dt);
    inc -= jump_sum(pois(rng.engine()), p.r, rng);
  }
  return inc;
}

double reflected_value(const SnlpParams& p, double barrier, double x0,
                       double dt, double grid_step, RngStream& rng) {
  validate_levy(p);
  if (!(dt > 0.0)) {
    throw std::domain_error("reflected_value: dt must be positive");
  }
  if (!(grid_step > 0.0)) {
    throw std::domain_error("reflected_value: grid step must be positive");
  }
  if (x0 < barrier) {
    throw std::invalid_argument("reflected_value: start below the barrier");
  }

  const auto n = static_cast<std::int64_t>(std::ceil(dt / grid_step));
  const double hs = dt / static_cast<double>(n);

  // Exact Skorokhod step over a jump-free span: draw the endpoint increment
  // xi and the span minimum jointly (given xi, the minimum of the bridge is
  // (xi - sqrt(xi^2 - 2 sigma^2 delta log U)) / 2, independent of the drift),
  // then push the whole span up by the regulator.  Reflecting the running
  // minimum instead of clamping the endpoint removes the O(sqrt(step))
  // boundary bias, so the substep size only bounds the span lengths.
  auto skorokhod_step = [&](double y, double delta) {
    if (!(delta > 0.0)) return y;
    const double xi =
        p.mu * delta + p.sigma * std::sqrt(delta) * rng.normal();
    const double min_inc =
        0.5 * (xi - std::sqrt(xi * xi - 2.0 * p.sigma * p.sigma * delta *
                                            std::log(rng.uniform())));
    return std::max(y + xi, barrier + xi - min_inc);
  };

  // Jump arrivals are visited in time order; each arrival splits its substep
  // and is reflected at the arrival instant.
  double next_jump = (p.ell > 0.0)
                         ? rng.exponential(p.ell)
                         : std::numeric_limits<double>::infinity();
  double y = x0;
  double t = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double t_end = (i + 1 == n) ? dt : hs * static_cast<double>(i + 1);
    while (next_jump <= t_end) {
      y = skorokhod_step(y, next_jump - t);
      t = next_jump;
      y = std::max(barrier, y - rng.exponential(p.r));
      next_jump += rng.exponential(p.ell);
    }
    y = skorokhod_step(y, t_end - t);
    t = t_end;
  }
  return y;
}

double ou_transition(double gamma, double x0, double dt, RngStream& rng) {
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("ou_transition: gamma must be positive");
  }
  if (!(dt > 0.0)) {
    throw std::domain_error("ou_transition: dt must be positive");
  }
  const double decay = std::exp(-gamma * dt);
  const double var = -std::expm1(-2.0 * gamma * dt) / (2.0 * gamma);
  return x0 * decay + std::sqrt(var) * rng.normal();
}

double advance_arm(ArmState& state, RngStream& rng) {
  if (state.arm == nullptr) {
    throw std::invalid_argument("advance_arm: unbound state");
  }
  const ArmSpec& arm = *state.arm;
  const double w = sample_holding(arm.lambda, rng);
  switch (arm.model.kind) {
    case ModelKind::bm:
    case ModelKind::snlp:
      state.value += snlp_increment(arm.model.levy, w, rng);
      break;
    case ModelKind::ou:
      state.value = ou_transition(arm.model.gamma, state.value, w, rng);
      break;
    case ModelKind::rbm:
    case ModelKind::rsnlp: {
      const double step = std::min(arm.grid_step, w / 1000.0);
      state.value = reflected_value(arm.model.levy, arm.model.barrier,
                                    state.value, w, step, rng);
      break;
    }
  }
  state.epochs += 1;
  state.local_clock += w;
  return w;
}

}  // namespace gittins
