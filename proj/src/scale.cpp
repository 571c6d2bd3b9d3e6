// SPDX-License-Identifier: MIT
//
// Root solving for the Laplace exponent and the closed-form scale functions.
#include "gittins/scale.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gittins {

namespace {

// Rational form of psi without the domain guard; below theta = -r this is the
// analytic continuation used for the second negative root.
double psi_rational(const SnlpParams& p, double theta) {
  return p.mu * theta + 0.5 * p.sigma * p.sigma * theta * theta -
         p.ell * theta / (p.r + theta);
}

double psi_prime_rational(const SnlpParams& p, double theta) {
  const double rt = p.r + theta;
  return p.mu + p.sigma * p.sigma * theta - p.ell * p.r / (rt * rt);
}

void validate(const SnlpParams& p) {
  if (!(p.sigma > 0.0))
    throw std::invalid_argument("SnlpParams: sigma must be > 0");
  if (!(p.ell >= 0.0))
    throw std::invalid_argument("SnlpParams: ell must be >= 0");
  if (!(p.r > 0.0)) throw std::invalid_argument("SnlpParams: r must be > 0");
}

// Safeguarded Newton iteration on f within a sign-changing bracket [lo, hi]
// (f(lo) < 0 < f(hi)); falls back to bisection whenever the Newton step
// leaves the bracket.  Absolute+relative tolerance 1e-13.
template <class F, class DF>
double solve_bracketed(F&& f, DF&& df, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx > 0.0)
      hi = x;
    else
      lo = x;
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-13 * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

double laplace_exponent(const SnlpParams& params, double theta) {
  validate(params);
  if (!(theta > -params.r))
    throw std::domain_error("laplace_exponent: theta <= -r (pole of the jump term)");
  return psi_rational(params, theta);
}

double laplace_exponent_prime(const SnlpParams& params, double theta) {
  validate(params);
  return psi_prime_rational(params, theta);
}

ScaleModel build_scale_model(const SnlpParams& params, double q) {
  validate(params);
  if (!(q > 0.0)) throw std::invalid_argument("build_scale_model: q must be > 0");

  ScaleModel m;
  m.params = params;
  m.q = q;

  const double s2 = params.sigma * params.sigma;
  if (params.ell == 0.0) {
    // Jump-free reduction: psi is a quadratic, both roots in closed form and
    // W^(q)(x) = (e^{Phi(q)x} - e^{-xi x}) / sqrt(mu^2 + 2 q sigma^2).
    const double s = std::sqrt(params.mu * params.mu + 2.0 * q * s2);
    m.phi_q = (-params.mu + s) / s2;
    m.xi = {(params.mu + s) / s2, 0.0};
    m.coeff_b = {1.0 / s, 0.0};
    m.psi_prime_at_phi = s;
    m.num_terms = 1;
    return m;
  }

  const auto psi = [&](double t) { return psi_rational(params, t); };
  const auto dpsi = [&](double t) { return psi_prime_rational(params, t); };

  // Phi(q): unique positive root of psi = q; bracket by doubling.
  double hi = 1.0;
  while (psi(hi) <= q) {
    hi *= 2.0;
    if (hi > 1e12)
      throw std::runtime_error("build_scale_model: Phi(q) bracketing failed");
  }
  m.phi_q = solve_bracketed([&](double t) { return psi(t) - q; }, dpsi, 0.0, hi);
  m.psi_prime_at_phi = dpsi(m.phi_q);

  // xi_1 in (0, r): psi(-t) - q changes sign as t -> r^- (jump-term pole).
  double t_hi = 0.5 * params.r;
  while (psi(-t_hi) <= q) {
    t_hi = params.r - 0.5 * (params.r - t_hi);
    if (params.r - t_hi < 1e-15 * params.r)
      throw std::runtime_error("build_scale_model: xi_1 bracketing failed");
  }
  const double xi1 = solve_bracketed([&](double t) { return psi(-t) - q; },
                                     [&](double t) { return -dpsi(-t); },
                                     0.0, t_hi);

  // xi_2 in (r, inf): root of the cubic (psi(theta) - q)(r + theta) = 0,
  // i.e. C(theta) = (sigma^2/2) theta^3 + (mu + sigma^2 r / 2) theta^2
  //                 + (mu r - ell - q) theta - q r, on theta < -r.
  const double c3 = 0.5 * s2, c2 = params.mu + 0.5 * s2 * params.r;
  const double c1 = params.mu * params.r - params.ell - q, c0 = -q * params.r;
  const auto cubic = [&](double t) { return ((c3 * t + c2) * t + c1) * t + c0; };
  const auto dcubic = [&](double t) { return (3.0 * c3 * t + 2.0 * c2) * t + c1; };
  double lo = -params.r - 1.0;
  while (cubic(lo) >= 0.0) {
    lo = -params.r + 2.0 * (lo + params.r);
    if (lo < -1e12)
      throw std::runtime_error("build_scale_model: xi_2 bracketing failed");
  }
  // sign convention for solve_bracketed: f(lo) < 0 < f(hi) with lo < hi
  const double theta2 =
      solve_bracketed(cubic, dcubic, lo, -params.r);
  const double xi2 = -theta2;

  m.xi = {xi1, xi2};
  m.coeff_b = {-1.0 / dpsi(-xi1), -1.0 / dpsi(-xi2)};
  m.num_terms = 2;
  return m;
}

double w_scale(const ScaleModel& model, double x) {
  if (x < 0.0) return 0.0;
  double w = std::exp(model.phi_q * x) / model.psi_prime_at_phi;
  for (int i = 0; i < model.num_terms; ++i)
    w -= model.coeff_b[static_cast<std::size_t>(i)] *
         std::exp(-model.xi[static_cast<std::size_t>(i)] * x);
  return w;
}

double z_scale(const ScaleModel& model, double x) {
  if (x <= 0.0) return 1.0;
  double acc = std::expm1(model.phi_q * x) / (model.phi_q * model.psi_prime_at_phi);
  for (int i = 0; i < model.num_terms; ++i) {
    const double xi = model.xi[static_cast<std::size_t>(i)];
    acc -= model.coeff_b[static_cast<std::size_t>(i)] * (-std::expm1(-xi * x)) / xi;
  }
  return 1.0 + model.q * acc;
}

double z_phi(const ScaleModel& model_q, const ScaleModel& model_q_lambda,
             double x) {
  const double phi = model_q.phi_q;
  if (x <= 0.0) return std::exp(phi * x);
  const double lambda = model_q_lambda.q - model_q.q;
  const double phi_l = model_q_lambda.phi_q;
  // J = int_0^x e^{-Phi(q) z} W^{(q+lambda)}(z) dz, term by term.
  double j = std::expm1((phi_l - phi) * x) /
             ((phi_l - phi) * model_q_lambda.psi_prime_at_phi);
  for (int i = 0; i < model_q_lambda.num_terms; ++i) {
    const double xi = model_q_lambda.xi[static_cast<std::size_t>(i)];
    j -= model_q_lambda.coeff_b[static_cast<std::size_t>(i)] *
         (-std::expm1(-(xi + phi) * x)) / (xi + phi);
  }
  return std::exp(phi * x) * (1.0 + lambda * j);
}

double z_phi(const ScaleModel& model, double lambda, double x) {
  if (!(lambda > 0.0)) throw std::invalid_argument("z_phi: lambda must be > 0");
  return z_phi(model, build_scale_model(model.params, model.q + lambda), x);
}

}  // namespace gittins
