// SPDX-License-Identifier: MIT
//
// Reward specifications: the named strictly-increasing reward maps used by the
// experiments (identity, sigmoid, softplus) plus a custom escape hatch.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace gittins {

enum class RewardKind { identity, sigmoid, softplus, custom };

// Overflow-safe logistic map 1/(1+e^{-x}).
[[nodiscard]] inline double sigmoid_fn(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Overflow-safe softplus log(1+e^{x}).
[[nodiscard]] inline double softplus_fn(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

// A reward map: named kind plus an evaluable function.  The named kinds are
// the three used throughout the experiment tables; `custom` admits arbitrary
// (nondecreasing) maps at the library level, e.g. for tests.
struct RewardSpec {
  RewardKind kind = RewardKind::identity;
  std::function<double(double)> fn;  // set only for kind == custom

  double operator()(double x) const {
    switch (kind) {
      case RewardKind::identity: return x;
      case RewardKind::sigmoid: return sigmoid_fn(x);
      case RewardKind::softplus: return softplus_fn(x);
      case RewardKind::custom: return fn(x);
    }
    throw std::logic_error("RewardSpec: bad kind");
  }

  [[nodiscard]] static RewardSpec identity() { return {RewardKind::identity, {}}; }
  [[nodiscard]] static RewardSpec sigmoid() { return {RewardKind::sigmoid, {}}; }
  [[nodiscard]] static RewardSpec softplus() { return {RewardKind::softplus, {}}; }
  [[nodiscard]] static RewardSpec custom(std::function<double(double)> f) {
    return {RewardKind::custom, std::move(f)};
  }
};

[[nodiscard]] inline std::string to_string(RewardKind k) {
  switch (k) {
    case RewardKind::identity: return "identity";
    case RewardKind::sigmoid: return "sigmoid";
    case RewardKind::softplus: return "softplus";
    case RewardKind::custom: return "custom";
  }
  return "?";
}

// Parses one of the named reward kinds; throws std::invalid_argument for
// anything else (custom rewards are not reachable from configuration).
[[nodiscard]] inline RewardSpec parse_reward(const std::string& name) {
  if (name == "identity") return RewardSpec::identity();
  if (name == "sigmoid") return RewardSpec::sigmoid();
  if (name == "softplus") return RewardSpec::softplus();
  throw std::invalid_argument("unknown reward kind: '" + name + "'");
}

}  // namespace gittins
