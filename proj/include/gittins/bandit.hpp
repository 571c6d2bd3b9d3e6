// SPDX-License-Identifier: MIT
//
// Discounted multi-armed bandit episodes: strategies score arms by their
// current values, the selected arm is observed after an exponential holding
// time, and reward accrues continuously at the pre-observation value's reward
// rate, discounted at rate q.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gittins/arm.hpp"
#include "gittins/index_table.hpp"
#include "gittins/pathsim.hpp"
#include "gittins/rng.hpp"

namespace gittins {

enum class StrategyKind { gittins_index, myopic, continuous_gittins };

[[nodiscard]] std::string to_string(StrategyKind k);
[[nodiscard]] StrategyKind parse_strategy(const std::string& name);

struct EpisodeConfig {
  std::vector<ArmSpec> arms;
  double q = 0.5;
  double horizon = 50.0;
};

// A strategy holds one score function per arm; arms are compared through
// their scores at the current values.
struct Strategy {
  StrategyKind kind = StrategyKind::gittins_index;
  std::vector<IndexFunction> scores;
};

// Builds the per-arm score functions (with interpolation tables where they
// pay off).  Throws std::invalid_argument if the strategy is undefined for an
// arm model (continuous index on rbm/ou).
[[nodiscard]] Strategy make_strategy(StrategyKind kind,
                                     const EpisodeConfig& episode);

// Discount factor integral over [s, s + dt): e^{-q s} (1 - e^{-q dt}) / q.
[[nodiscard]] double discount_segment(double q, double s, double dt);

// Index of the arm with the highest score; ties resolve to the lowest index.
[[nodiscard]] std::size_t select_arm(const Strategy& strategy,
                                     const std::vector<ArmState>& states);

// Runs one episode from all-zero arm values to the horizon and returns the
// total discounted reward.  `arm_streams` supplies one stream per arm.
[[nodiscard]] double run_episode(const EpisodeConfig& episode,
                                 const Strategy& strategy,
                                 std::vector<RngStream>& arm_streams);

}  // namespace gittins
