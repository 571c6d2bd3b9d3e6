// SPDX-License-Identifier: MIT
//
// Index formulas for (reflected) spectrally negative Levy arms.
#include "gittins/index_levy.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gittins/quadrature.hpp"

namespace gittins {

LevyIndexModel build_levy_index_model(const SnlpParams& params, double q,
                                      double lambda, RewardSpec reward,
                                      std::optional<double> barrier) {
  if (!(q > 0.0))
    throw std::invalid_argument("build_levy_index_model: q must be > 0");
  if (!(lambda > 0.0))
    throw std::invalid_argument("build_levy_index_model: lambda must be > 0");
  LevyIndexModel m;
  m.scale_q = build_scale_model(params, q);
  m.scale_q_lambda = build_scale_model(params, q + lambda);
  m.lambda = lambda;
  m.barrier = barrier;
  m.reward = std::move(reward);
  m.atom_p0 = m.scale_q.phi_q / m.scale_q_lambda.phi_q;
  return m;
}

double mu_transform_sn(const LevyIndexModel& model, double theta) {
  const double phi = model.scale_q.phi_q;
  const double phi_l = model.scale_q_lambda.phi_q;
  return (phi_l + theta) / (theta + phi) * (phi / phi_l);
}

MuLambdaSN mu_decompose_sn(const LevyIndexModel& model) {
  MuLambdaSN d;
  d.atom_at_zero = model.atom_p0;
  d.tail_rate = model.scale_q.phi_q;
  d.tail_mass = 1.0 - model.atom_p0;
  return d;
}

double exp_tail_average(const RewardSpec& reward, double x, double rate) {
  if (!(rate > 0.0))
    throw std::domain_error("exp_tail_average: rate must be > 0");
  if (reward.kind == RewardKind::identity) return x + 1.0 / rate;
  // E[R(x+E)] = int_0^inf R(x + u/rate) e^{-u} du, truncated where the
  // exponential weight is below 1e-16 (u = 37); the omitted tail is bounded
  // by e^{-37} * sup-linear growth of R.
  return integrate_adaptive(
      [&](double u) { return reward(x + u / rate) * std::exp(-u); }, 0.0, 37.0,
      {1e-10, 1e-12, 4000});
}

double gittins_snlp(const LevyIndexModel& model, double x) {
  if (model.barrier.has_value())
    throw std::domain_error("gittins_snlp: model carries a barrier; use gittins_rsnlp");
  const double p0 = model.atom_p0;
  return p0 * model.reward(x) +
         (1.0 - p0) * exp_tail_average(model.reward, x, model.scale_q.phi_q);
}

double reflected_resolvent_density(const LevyIndexModel& model, double a,
                                   double y) {
  if (a > 0.0)
    throw std::domain_error("reflected_resolvent_density: requires a <= 0");
  if (!(y > 0.0))
    throw std::domain_error("reflected_resolvent_density: requires y > 0");
  const double q = model.scale_q.q;
  const double lambda = model.lambda;
  const double z_plain = z_scale(model.scale_q_lambda, -a);
  const double z_with_phi = z_phi(model.scale_q, model.scale_q_lambda, -a);
  const double denom = (q + lambda) * z_with_phi / z_plain - lambda;
  const double phi = model.scale_q.phi_q;
  return phi * std::exp(-phi * y) / denom;
}

double gittins_rsnlp(const LevyIndexModel& model, double x) {
  if (!model.barrier.has_value())
    throw std::domain_error("gittins_rsnlp: model has no barrier");
  const double b = *model.barrier;
  const double q = model.scale_q.q;
  const double lambda = model.lambda;
  const double tail_b = exp_tail_average(model.reward, std::max(x, b),
                                         model.scale_q.phi_q);
  if (x <= b)
    return (q / (lambda + q)) * model.reward(b) +
           (lambda / (lambda + q)) * tail_b;
  const double v = x - b;
  const double c = (lambda / (q + lambda)) *
                   z_scale(model.scale_q_lambda, v) /
                   z_phi(model.scale_q, model.scale_q_lambda, v);
  return (1.0 - c) * model.reward(x) + c * tail_b;
}

double gittins_continuous(const LevyIndexModel& model, double x) {
  return exp_tail_average(model.reward, x, model.scale_q.phi_q);
}

double mu_transform_sp(const SnlpParams& dual_params, double q, double lambda,
                       double theta) {
  if (!(q > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("mu_transform_sp: q and lambda must be > 0");
  const ScaleModel mq = build_scale_model(dual_params, q);
  const ScaleModel ml = build_scale_model(dual_params, q + lambda);
  const double phi = mq.phi_q, phi_l = ml.phi_q;

  // Taylor helpers for the removable singularities; psi is rational, so the
  // derivatives are exact closed forms.
  const auto psi = [&](double t) { return laplace_exponent(dual_params, t); };
  const auto d1 = [&](double t) { return laplace_exponent_prime(dual_params, t); };
  const double s2 = dual_params.sigma * dual_params.sigma;
  const auto d2 = [&](double t) {
    const double rt = dual_params.r + t;
    return s2 + 2.0 * dual_params.ell * dual_params.r / (rt * rt * rt);
  };
  const auto d3 = [&](double t) {
    const double rt = dual_params.r + t;
    return -6.0 * dual_params.ell * dual_params.r / (rt * rt * rt * rt);
  };

  // factor1 = (theta - Phi(q)) / (psi(theta) - q): near Phi(q) use
  // 1 / (psi'(Phi) + psi''(Phi) d/2 + psi'''(Phi) d^2/6) with d = theta - Phi.
  const double d_phi = theta - phi;
  double factor1;
  if (std::abs(d_phi) < 1e-5 * (1.0 + std::abs(phi))) {
    factor1 = 1.0 / (d1(phi) + 0.5 * d2(phi) * d_phi +
                     d3(phi) * d_phi * d_phi / 6.0);
  } else {
    factor1 = d_phi / (psi(theta) - q);
  }

  // factor2 = (lambda + q - psi(theta)) / (Phi(q+lambda) - theta): the
  // difference quotient of psi between theta and Phi(q+lambda).
  const double e_phi = phi_l - theta;
  double factor2;
  if (std::abs(e_phi) < 1e-5 * (1.0 + std::abs(phi_l))) {
    factor2 = d1(phi_l) - 0.5 * d2(phi_l) * e_phi +
              d3(phi_l) * e_phi * e_phi / 6.0;
  } else {
    factor2 = (lambda + q - psi(theta)) / e_phi;
  }

  return factor1 * factor2 * (q / phi) * (phi_l / (q + lambda));
}

}  // namespace gittins
