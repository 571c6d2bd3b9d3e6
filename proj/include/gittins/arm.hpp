// SPDX-License-Identifier: MIT
//
// The model vocabulary shared by the index builders, the path simulator, and
// the experiment configuration: one bandit arm is a driving model plus an
// observation rate, a reward map, and (for reflected models) a grid step.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

#include "gittins/reward.hpp"
#include "gittins/scale.hpp"

namespace gittins {

enum class ModelKind { bm, rbm, ou, snlp, rsnlp };

// One arm's driving process.  `levy` carries the parameters for bm/snlp and
// the free part of rbm/rsnlp (bm/rbm use mu = 0, ell = 0); `barrier` applies
// to rbm/rsnlp; `gamma` to ou (unit volatility, mean reversion towards 0).
struct ArmModel {
  ModelKind kind = ModelKind::bm;
  SnlpParams levy{};
  double barrier = 0.0;
  double gamma = 1.0;

  [[nodiscard]] static ArmModel BM(double sigma) {
    return {ModelKind::bm, {0.0, sigma, 0.0, 1.0}, 0.0, 1.0};
  }
  [[nodiscard]] static ArmModel RBM(double barrier, double sigma) {
    return {ModelKind::rbm, {0.0, sigma, 0.0, 1.0}, barrier, 1.0};
  }
  [[nodiscard]] static ArmModel OU(double gamma) {
    return {ModelKind::ou, {0.0, 1.0, 0.0, 1.0}, 0.0, gamma};
  }
  [[nodiscard]] static ArmModel SNLP(double mu, double sigma, double ell, double r) {
    return {ModelKind::snlp, {mu, sigma, ell, r}, 0.0, 1.0};
  }
  [[nodiscard]] static ArmModel RSNLP(double barrier, double mu, double sigma,
                                      double ell, double r) {
    return {ModelKind::rsnlp, {mu, sigma, ell, r}, barrier, 1.0};
  }

  [[nodiscard]] bool reflected() const {
    return kind == ModelKind::rbm || kind == ModelKind::rsnlp;
  }
};

// A configured arm: model, observation (holding-time) rate, reward, and the
// grid step used for reflected-path simulation (effective per-period step is
// min(grid_step, holding/1000)).
struct ArmSpec {
  ArmModel model{};
  double lambda = 0.1;
  RewardSpec reward{};
  double grid_step = 1e-3;
};

namespace detail {
inline std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace detail

// Short display name matching the result tables, e.g. "SNLP(1,1,6,2)".
[[nodiscard]] inline std::string describe(const ArmModel& m) {
  using detail::fmt_g;
  switch (m.kind) {
    case ModelKind::bm: return "BM(" + fmt_g(m.levy.sigma) + ")";
    case ModelKind::rbm:
      return "RBM(" + fmt_g(m.barrier) + "," + fmt_g(m.levy.sigma) + ")";
    case ModelKind::ou: return "OU(" + fmt_g(m.gamma) + ")";
    case ModelKind::snlp:
      return "SNLP(" + fmt_g(m.levy.mu) + "," + fmt_g(m.levy.sigma) + "," +
             fmt_g(m.levy.ell) + "," + fmt_g(m.levy.r) + ")";
    case ModelKind::rsnlp:
      return "RSNLP(" + fmt_g(m.barrier) + "," + fmt_g(m.levy.mu) + "," +
             fmt_g(m.levy.sigma) + "," + fmt_g(m.levy.ell) + "," +
             fmt_g(m.levy.r) + ")";
  }
  return "?";
}

[[nodiscard]] inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::bm: return "bm";
    case ModelKind::rbm: return "rbm";
    case ModelKind::ou: return "ou";
    case ModelKind::snlp: return "snlp";
    case ModelKind::rsnlp: return "rsnlp";
  }
  return "?";
}

[[nodiscard]] inline ModelKind parse_model_kind(const std::string& name) {
  if (name == "bm") return ModelKind::bm;
  if (name == "rbm") return ModelKind::rbm;
  if (name == "ou") return ModelKind::ou;
  if (name == "snlp") return ModelKind::snlp;
  if (name == "rsnlp") return ModelKind::rsnlp;
  throw std::invalid_argument("unknown model kind: '" + name + "'");
}

}  // namespace gittins
