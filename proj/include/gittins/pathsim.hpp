// SPDX-License-Identifier: MIT
//
// Path-wise simulation of arm values at exponential renewal times.  Free
// models (bm, snlp, ou) advance with exact transition sampling; reflected
// models (rbm, rsnlp) advance on a fine time grid with reflection applied at
// every substep, which converges at order sqrt(step) in the barrier region.
#pragma once

#include <cstdint>

#include "gittins/arm.hpp"
#include "gittins/rng.hpp"

namespace gittins {

// State of one arm inside an episode: current value, number of completed
// observation periods, and the arm-local clock (sum of its holding times).
struct ArmState {
  const ArmSpec* arm = nullptr;
  double value = 0.0;
  std::int64_t epochs = 0;
  double local_clock = 0.0;
};

// Draws one Exp(lambda) holding time (strictly positive).
[[nodiscard]] double sample_holding(double lambda, RngStream& rng);

// Exact increment of the spectrally negative process over dt: Gaussian part
// plus a compound-Poisson sum of Exp(r) downward jumps (drawn as a single
// Gamma(K, 1/r) variate given the jump count K).
[[nodiscard]] double snlp_increment(const SnlpParams& p, double dt,
                                    RngStream& rng);

// Value after dt of the reflected process started at x0 >= barrier.  The
// period is walked in substeps of length at most `grid_step`, split further
// at sampled jump arrival times; each jump-free span applies one exact
// Skorokhod step (endpoint increment and span minimum drawn jointly), and
// each jump is reflected at its arrival instant.
[[nodiscard]] double reflected_value(const SnlpParams& p, double barrier,
                                     double x0, double dt, double grid_step,
                                     RngStream& rng);

// Exact OU transition over dt from x0 (unit volatility, reversion rate gamma).
[[nodiscard]] double ou_transition(double gamma, double x0, double dt,
                                   RngStream& rng);

// Draws the next holding time for the arm, advances its value by the matching
// transition, updates epoch count and local clock, and returns the holding
// time.
double advance_arm(ArmState& state, RngStream& rng);

}  // namespace gittins
