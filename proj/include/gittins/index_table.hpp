// SPDX-License-Identifier: MIT
//
// Index functions used by the bandit strategies: closed-form routing for each
// arm model plus an optional monotone interpolation table for the models whose
// pointwise evaluation is expensive (OU) or quadrature-backed (non-identity
// rewards).  Points outside the tabulated range fall back to exact evaluation.
#pragma once

#include <functional>
#include <vector>

#include "gittins/arm.hpp"
#include "gittins/reward.hpp"

namespace gittins {

// A scalar score function of the arm state.  When a table is present it is a
// nondecreasing piecewise-linear interpolant on [xs.front(), xs.back()];
// reflected models are constant at and below the barrier.
struct IndexFunction {
  std::function<double(double)> exact;  // always usable
  std::vector<double> xs;               // empty when untabulated
  std::vector<double> ys;
  bool flat_below = false;  // reflected models: constant below xs.front()

  [[nodiscard]] bool has_table() const { return !xs.empty(); }
  [[nodiscard]] double operator()(double x) const;
};

// Gittins index of the arm for discount rate q.  Routing: bm and snlp use the
// spectrally negative closed form, rbm and rsnlp the reflected closed form
// (rbm as the jump-free special case), ou the diffusion-resolvent evaluator.
// `horizon` sizes the table range from the arm's reachable set over one
// episode; `tabulate` enables the interpolation table (ou and non-identity
// rewards; identity-reward closed forms stay exact).
[[nodiscard]] IndexFunction make_gittins_index(const ArmSpec& arm, double q,
                                               double horizon, bool tabulate);

// Limiting (continuous-observation) index; defined for bm, snlp and rsnlp.
[[nodiscard]] IndexFunction make_continuous_index(const ArmSpec& arm, double q,
                                                  double horizon,
                                                  bool tabulate);

// Myopic score: the reward itself.
[[nodiscard]] IndexFunction make_myopic_index(const ArmSpec& arm);

}  // namespace gittins
