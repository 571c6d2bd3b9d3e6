// SPDX-License-Identifier: MIT
//
// Laplace exponent, its roots, and the scale functions W^(q), Z^(q) of a
// spectrally negative Levy process with a Brownian component and downward
// exponential jumps:  Y(t) = mu t + sigma B(t) - sum of Exp(r) jumps at rate
// ell.  All scale-function values are closed-form exponential sums.
#pragma once

#include <array>

namespace gittins {

// Parameters of the Levy arm.  sigma > 0 (Gaussian component required),
// ell >= 0, r > 0 when ell > 0 (jumps are downward with Exp(r) sizes).
struct SnlpParams {
  double mu = 0.0;
  double sigma = 1.0;
  double ell = 0.0;
  double r = 1.0;
};

// Cached root data for one discount rate q: the right inverse Phi(q) of the
// Laplace exponent, the negative roots -xi_i of psi = q, and the coefficients
// B_i = -1/psi'(-xi_i) entering W^(q).  With jumps there are two negative
// roots 0 < xi_1 < r < xi_2; the jump-free case stores the single root in
// xi[0] (num_terms == 1) and leaves the second slot unused.
struct ScaleModel {
  SnlpParams params{};
  double q = 0.0;
  double phi_q = 0.0;
  std::array<double, 2> xi{};
  std::array<double, 2> coeff_b{};
  double psi_prime_at_phi = 0.0;
  int num_terms = 1;
};

// psi(theta) = mu theta + sigma^2 theta^2 / 2 - ell theta / (r + theta);
// defined for theta > -r.  Throws std::domain_error at or below the pole.
[[nodiscard]] double laplace_exponent(const SnlpParams& params, double theta);

// First derivative psi'(theta) on theta > -r (and, as the analytic
// continuation of the rational expression, at the second negative root).
[[nodiscard]] double laplace_exponent_prime(const SnlpParams& params, double theta);

// Solves for Phi(q) and the negative roots; q > 0.  Deterministic (pure
// bisection refined by Newton on fixed brackets).
[[nodiscard]] ScaleModel build_scale_model(const SnlpParams& params, double q);

// W^(q)(x) = 1_{x>=0} ( e^{Phi(q)x}/psi'(Phi(q)) - sum_i B_i e^{-xi_i x} ).
[[nodiscard]] double w_scale(const ScaleModel& model, double x);

// Z^(q)(x) = 1 + q * int_0^x W^(q)(y) dy  (= 1 for x <= 0), in closed form.
[[nodiscard]] double z_scale(const ScaleModel& model, double x);

// Z^(q+lambda)(x, Phi(q)) = e^{Phi(q)x} (1 + lambda int_0^x e^{-Phi(q)z}
// W^(q+lambda)(z) dz), in closed form; equals e^{Phi(q)x} for x <= 0 and 1 at
// x = 0.  `model` is the q-level scale model; the (q+lambda)-level model is
// built internally (or supply it via the second overload to amortise).
[[nodiscard]] double z_phi(const ScaleModel& model, double lambda, double x);
[[nodiscard]] double z_phi(const ScaleModel& model_q,
                           const ScaleModel& model_q_lambda, double x);

}  // namespace gittins
