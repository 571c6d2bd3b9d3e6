// SPDX-License-Identifier: MIT
//
// Gittins indices for one-dimensional diffusions observed at exponential
// renewal times: Brownian motion, reflected Brownian motion, and
// Ornstein-Uhlenbeck.  The index is a ratio of two resolvent-style
// functionals H(x; R) / H(x; 1); both are assembled from antiderivatives of
// products of the fundamental solutions against the speed measure.
#pragma once

#include <functional>
#include <limits>
#include <memory>

#include "gittins/quadrature.hpp"
#include "gittins/reward.hpp"

namespace gittins {

enum class DiffusionKind { bm, rbm, ou };

// A diffusion on an interval: BM(sigma) and OU(gamma) live on the whole line,
// RBM(barrier, sigma) on [barrier, infinity) with instantaneous reflection.
// OU has unit volatility and drift -gamma * x.
struct DiffusionSpec {
  DiffusionKind kind = DiffusionKind::bm;
  double sigma = 1.0;    // bm, rbm
  double barrier = 0.0;  // rbm lower endpoint
  double gamma = 1.0;    // ou mean-reversion rate

  [[nodiscard]] static DiffusionSpec BM(double sigma) {
    return {DiffusionKind::bm, sigma, 0.0, 1.0};
  }
  [[nodiscard]] static DiffusionSpec RBM(double barrier, double sigma) {
    return {DiffusionKind::rbm, sigma, barrier, 1.0};
  }
  [[nodiscard]] static DiffusionSpec OU(double gamma) {
    return {DiffusionKind::ou, 1.0, 0.0, gamma};
  }

  // Lower endpoint of the state interval (-inf except for RBM).
  [[nodiscard]] double interval_lo() const {
    return kind == DiffusionKind::rbm
               ? barrier
               : -std::numeric_limits<double>::infinity();
  }
};

// Density of the speed measure at y: 2/sigma^2 for bm/rbm, 2 exp(-gamma y^2)
// for ou.  Throws std::domain_error for y outside the state interval.
[[nodiscard]] double speed_density(const DiffusionSpec& spec, double y);

// phi_q(x) / phi_q(y) for y <= x, where phi_q is the decreasing fundamental
// solution of the alpha = q resolvent equation; equals E_x[e^{-q H_y}] for the
// first hitting time H_y of level y from above.  Throws std::domain_error if
// y > x or either point is outside the interval.
[[nodiscard]] double phi_ratio(const DiffusionSpec& spec, double q, double x,
                               double y);

// Resolvent (Green) density kernel G_alpha(x, y) with respect to the speed
// measure: psi_alpha(min) * phi_alpha(max) / w_alpha.
[[nodiscard]] double green(const DiffusionSpec& spec, double alpha_rate,
                           double x, double y);

// A Green kernel bound to one rate, for callers that evaluate it repeatedly.
struct GreenKernel {
  DiffusionSpec spec{};
  double alpha_rate = 1.0;

  [[nodiscard]] double operator()(double x, double y) const {
    return green(spec, alpha_rate, x, y);
  }
  [[nodiscard]] double ratio(double x, double y) const {
    return phi_ratio(spec, alpha_rate, x, y);
  }
};

// Discounted occupation functional E_y[ int_0^{T_tau} e^{-q s} h(Y(s)) ds ]
// where T_tau is the first Exp(lambda)-renewal observation at or below the
// starting point y.  Links to the observed-chain sums via
//   E_y[ sum_{k<tau} e^{-q T_k} h(Y(T_k)) ] = h(y) + lambda * g(h 1_{(y,inf)})
// for the chain started at y; in particular the index denominator equals
// 1 + lambda * g(1_{(y,inf)}) = (lambda+q) * g(1).  Direct quadrature
// implementation used as the reference for the closed-form index.
[[nodiscard]] double resolvent_until_down(const DiffusionSpec& spec, double q,
                                          double lambda, double y,
                                          const std::function<double(double)>& h);

// Gittins index of the diffusion arm at x for discount q and observation rate
// lambda.  For RBM, x below the barrier is clamped to the barrier.
[[nodiscard]] double gittins_diffusion(const DiffusionSpec& spec, double q,
                                       double lambda, const RewardSpec& reward,
                                       double x);

// Shared-precomputation evaluator: builds antiderivative tables once on
// [eval_lo, U] and then serves gittins values for any x in
// [eval_lo, eval_hi] in O(log segments) time.  Used both for single-point
// queries (eval_lo == eval_hi) and for index-table sweeps.
class DiffusionIndexEvaluator {
 public:
  DiffusionIndexEvaluator(const DiffusionSpec& spec, double q, double lambda,
                          RewardSpec reward, double eval_lo, double eval_hi);
  ~DiffusionIndexEvaluator();
  DiffusionIndexEvaluator(DiffusionIndexEvaluator&&) noexcept;
  DiffusionIndexEvaluator& operator=(DiffusionIndexEvaluator&&) noexcept;

  // Index value; x must lie in [eval_lo, eval_hi] (RBM: clamped to barrier).
  [[nodiscard]] double gamma(double x) const;

  [[nodiscard]] double eval_lo() const;
  [[nodiscard]] double eval_hi() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gittins
