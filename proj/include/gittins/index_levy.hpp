// SPDX-License-Identifier: MIT
//
// Closed-form Gittins indices for spectrally negative Levy arms observed at
// exponential renewal times, their reflected-at-a-barrier variants, the
// continuously-observed limit index, and the associated transform views of
// the index measure mu^lambda.
#pragma once

#include <optional>

#include "gittins/reward.hpp"
#include "gittins/scale.hpp"

namespace gittins {

// Everything needed to evaluate the index of one Levy arm: scale models at
// the discount rate q and at q + lambda, the arrival rate, the optional
// reflection barrier, the reward map, and the cached atom
// p0 = Phi(q)/Phi(q+lambda) of mu^lambda at 0.
struct LevyIndexModel {
  ScaleModel scale_q{};
  ScaleModel scale_q_lambda{};
  double lambda = 0.0;
  std::optional<double> barrier{};
  RewardSpec reward{};
  double atom_p0 = 1.0;
};

// The exponential-plus-atom decomposition of mu^lambda for a spectrally
// negative arm: an atom at 0 plus an Exp(Phi(q)) tail.
struct MuLambdaSN {
  double atom_at_zero = 1.0;  // Phi(q)/Phi(q+lambda)
  double tail_rate = 0.0;     // Phi(q)
  double tail_mass = 0.0;     // 1 - atom_at_zero
};

[[nodiscard]] LevyIndexModel build_levy_index_model(
    const SnlpParams& params, double q, double lambda, RewardSpec reward,
    std::optional<double> barrier = std::nullopt);

// Laplace transform of mu^lambda:
// (Phi(q+lambda)+theta)/(theta+Phi(q)) * Phi(q)/Phi(q+lambda);  1 at theta=0.
[[nodiscard]] double mu_transform_sn(const LevyIndexModel& model, double theta);

[[nodiscard]] MuLambdaSN mu_decompose_sn(const LevyIndexModel& model);

// E[R(x + E)] for E ~ Exp(rate): the exponential tail average entering every
// index formula.  Identity rewards are exact (x + 1/rate); other kinds use
// adaptive quadrature (absolute tolerance 1e-10, truncated where the
// exponential weight drops below 1e-16).
[[nodiscard]] double exp_tail_average(const RewardSpec& reward, double x,
                                      double rate);

// Gittins index of an unreflected arm:
//   Gamma(x) = p0 R(x) + (1 - p0) E[R(x + Exp(Phi(q)))].
// Requires model.barrier to be absent.
[[nodiscard]] double gittins_snlp(const LevyIndexModel& model, double x);

// Density in y > 0 of the q-discounted occupation measure, before the first
// observation at or below 0, of the arm reflected from below at a <= 0 and
// started at 0:
//   u(y) = Phi(q) e^{-Phi(q) y} /
//          [ (q+lambda) Z^{(q+lambda)}(-a, Phi(q)) / Z^{(q+lambda)}(-a) - lambda ].
[[nodiscard]] double reflected_resolvent_density(const LevyIndexModel& model,
                                                 double a, double y);

// Gittins index of an arm reflected from below at model.barrier:
//   x >  b: (1 - c) R(x) + c E[R(x + Exp(Phi(q)))],
//           c = (lambda/(q+lambda)) Z^{(q+lambda)}(x-b) / Z^{(q+lambda)}(x-b, Phi(q));
//   x <= b: the x = b value (the index is flat at and below the barrier).
[[nodiscard]] double gittins_rsnlp(const LevyIndexModel& model, double x);

// Continuously-observed limit index Gamma^inf(x) = E[R(x + Exp(Phi(q)))];
// the same formula serves unreflected and reflected arms.
[[nodiscard]] double gittins_continuous(const LevyIndexModel& model, double x);

// Laplace transform of mu^lambda for a *spectrally positive* arm whose dual
// (spectrally negative) parameters are given:
//   ((theta-Phi(q))/(psi(theta)-q)) * ((lambda+q-psi(theta))/(Phi(q+lambda)-theta))
//   * (q/Phi(q)) * (Phi(q+lambda)/(lambda+q)),
// with the removable singularities at theta = Phi(q) and theta = Phi(q+lambda)
// evaluated by explicit series limits.  Value 1 at theta = 0.
[[nodiscard]] double mu_transform_sp(const SnlpParams& dual_params, double q,
                                     double lambda, double theta);

}  // namespace gittins
