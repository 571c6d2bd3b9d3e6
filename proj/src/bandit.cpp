// SPDX-License-Identifier: MIT
//
// Episode loop: score, select, hold, accrue discounted reward, observe.
#include "gittins/bandit.hpp"

#include <cmath>
#include <stdexcept>

namespace gittins {

std::string to_string(StrategyKind k) {
  switch (k) {
    case StrategyKind::gittins_index: return "GI";
    case StrategyKind::myopic: return "Myopic";
    case StrategyKind::continuous_gittins: return "GI-cts";
  }
  return "?";
}

StrategyKind parse_strategy(const std::string& name) {
  if (name == "GI") return StrategyKind::gittins_index;
  if (name == "Myopic") return StrategyKind::myopic;
  if (name == "GI-cts") return StrategyKind::continuous_gittins;
  throw std::invalid_argument("unknown strategy: '" + name + "'");
}

Strategy make_strategy(StrategyKind kind, const EpisodeConfig& episode) {
  if (episode.arms.empty()) {
    throw std::invalid_argument("make_strategy: no arms configured");
  }
  if (!(episode.q > 0.0)) {
    throw std::invalid_argument("make_strategy: q must be positive");
  }
  Strategy s;
  s.kind = kind;
  s.scores.reserve(episode.arms.size());
  for (const ArmSpec& arm : episode.arms) {
    switch (kind) {
      case StrategyKind::gittins_index:
        s.scores.push_back(
            make_gittins_index(arm, episode.q, episode.horizon, true));
        break;
      case StrategyKind::myopic:
        s.scores.push_back(make_myopic_index(arm));
        break;
      case StrategyKind::continuous_gittins:
        s.scores.push_back(
            make_continuous_index(arm, episode.q, episode.horizon, true));
        break;
    }
  }
  return s;
}

double discount_segment(double q, double s, double dt) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("discount_segment: q must be positive");
  }
  if (dt < 0.0) {
    throw std::domain_error("discount_segment: negative duration");
  }
  return std::exp(-q * s) * (-std::expm1(-q * dt)) / q;
}

std::size_t select_arm(const Strategy& strategy,
                       const std::vector<ArmState>& states) {
  if (states.empty() || strategy.scores.size() != states.size()) {
    throw std::invalid_argument("select_arm: state/score size mismatch");
  }
  std::size_t best = 0;
  double best_score = strategy.scores[0](states[0].value);
  for (std::size_t j = 1; j < states.size(); ++j) {
    const double score = strategy.scores[j](states[j].value);
    if (score > best_score) {
      best = j;
      best_score = score;
    }
  }
  return best;
}

double run_episode(const EpisodeConfig& episode, const Strategy& strategy,
                   std::vector<RngStream>& arm_streams) {
  if (episode.arms.empty()) {
    throw std::invalid_argument("run_episode: no arms configured");
  }
  if (!(episode.horizon > 0.0)) {
    throw std::invalid_argument("run_episode: horizon must be positive");
  }
  if (arm_streams.size() != episode.arms.size()) {
    throw std::invalid_argument("run_episode: one stream per arm required");
  }

  std::vector<ArmState> states(episode.arms.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    states[j].arm = &episode.arms[j];
  }

  double total = 0.0;
  double clock = 0.0;
  while (clock < episode.horizon) {
    const std::size_t j = select_arm(strategy, states);
    const double rate = states[j].arm->reward(states[j].value);
    const double w = advance_arm(states[j], arm_streams[j]);
    if (clock + w <= episode.horizon) {
      total += discount_segment(episode.q, clock, w) * rate;
      clock += w;
    } else {
      total += discount_segment(episode.q, clock, episode.horizon - clock) * rate;
      break;
    }
  }
  return total;
}

}  // namespace gittins
