// SPDX-License-Identifier: MIT
//
// JSON configuration parsing with exhaustive schema validation: every key is
// checked against the schema and every value against its domain before any
// computation starts.
#include "gittins/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gittins {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void check_keys(const json& obj, const std::set<std::string>& required,
                const std::set<std::string>& optional,
                const std::string& ctx) {
  if (!obj.is_object()) fail(ctx + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (required.count(item.key()) == 0 && optional.count(item.key()) == 0) {
      fail("unknown key '" + item.key() + "' in " + ctx);
    }
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) fail("missing key '" + key + "' in " + ctx);
  }
}

double get_number(const json& obj, const std::string& key,
                  const std::string& ctx) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail("'" + key + "' in " + ctx + " must be a number");
  return v.get<double>();
}

ArmSpec parse_arm(const json& j, double grid_step, std::size_t idx) {
  const std::string ctx = "arms[" + std::to_string(idx) + "]";
  check_keys(j, {"model", "params", "lambda", "reward"}, {}, ctx);

  if (!j.at("model").is_string()) fail("'model' in " + ctx + " must be a string");
  if (!j.at("reward").is_string()) fail("'reward' in " + ctx + " must be a string");

  ArmSpec arm;
  arm.grid_step = grid_step;
  ModelKind kind{};
  try {
    kind = parse_model_kind(j.at("model").get<std::string>());
    arm.reward = parse_reward(j.at("reward").get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail(ctx + ": " + e.what());
  }

  arm.lambda = get_number(j, "lambda", ctx);
  if (!(arm.lambda > 0.0)) fail("'lambda' in " + ctx + " must be positive");

  const json& p = j.at("params");
  const std::string pctx = ctx + ".params";
  auto num = [&](const char* key) { return get_number(p, key, pctx); };
  switch (kind) {
    case ModelKind::bm:
      check_keys(p, {"sigma"}, {}, pctx);
      arm.model = ArmModel::BM(num("sigma"));
      break;
    case ModelKind::rbm:
      check_keys(p, {"barrier", "sigma"}, {}, pctx);
      arm.model = ArmModel::RBM(num("barrier"), num("sigma"));
      break;
    case ModelKind::ou:
      check_keys(p, {"gamma"}, {}, pctx);
      arm.model = ArmModel::OU(num("gamma"));
      break;
    case ModelKind::snlp:
      check_keys(p, {"mu", "sigma", "ell", "r"}, {}, pctx);
      arm.model = ArmModel::SNLP(num("mu"), num("sigma"), num("ell"), num("r"));
      break;
    case ModelKind::rsnlp:
      check_keys(p, {"barrier", "mu", "sigma", "ell", "r"}, {}, pctx);
      arm.model = ArmModel::RSNLP(num("barrier"), num("mu"), num("sigma"),
                                  num("ell"), num("r"));
      break;
  }

  const SnlpParams& lv = arm.model.levy;
  if (arm.model.kind != ModelKind::ou) {
    if (!(lv.sigma > 0.0)) fail(pctx + ": sigma must be positive");
  }
  if (arm.model.kind == ModelKind::snlp || arm.model.kind == ModelKind::rsnlp) {
    if (!(lv.ell >= 0.0)) fail(pctx + ": ell must be nonnegative");
    if (!(lv.r > 0.0)) fail(pctx + ": r must be positive");
  }
  if (arm.model.kind == ModelKind::ou && !(arm.model.gamma > 0.0)) {
    fail(pctx + ": gamma must be positive");
  }
  if (arm.model.reflected() && !(arm.model.barrier <= 0.0)) {
    fail(pctx + ": barrier must be <= 0 (episodes start at 0)");
  }
  return arm;
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }

  check_keys(j, {"q", "horizon", "paths", "seed", "arms", "strategies"},
             {"grid_step"}, "the top-level object");

  ExperimentConfig cfg;
  cfg.episode.q = get_number(j, "q", "the top-level object");
  if (!(cfg.episode.q > 0.0)) fail("'q' must be positive");
  cfg.episode.horizon = get_number(j, "horizon", "the top-level object");
  if (!(cfg.episode.horizon > 0.0)) fail("'horizon' must be positive");

  if (!j.at("paths").is_number_integer()) fail("'paths' must be an integer");
  cfg.n_paths = j.at("paths").get<std::int64_t>();
  if (cfg.n_paths < 1) fail("'paths' must be >= 1");

  if (!j.at("seed").is_number_integer() || j.at("seed").get<std::int64_t>() < 0) {
    fail("'seed' must be a nonnegative integer");
  }
  cfg.seed = j.at("seed").get<std::uint64_t>();

  double grid_step = 1e-3;
  if (j.contains("grid_step")) {
    grid_step = get_number(j, "grid_step", "the top-level object");
    if (!(grid_step > 0.0)) fail("'grid_step' must be positive");
  }

  const json& arms = j.at("arms");
  if (!arms.is_array() || arms.empty()) {
    fail("'arms' must be a non-empty array");
  }
  for (std::size_t i = 0; i < arms.size(); ++i) {
    cfg.episode.arms.push_back(parse_arm(arms[i], grid_step, i));
  }

  const json& strategies = j.at("strategies");
  if (!strategies.is_array() || strategies.empty()) {
    fail("'strategies' must be a non-empty array");
  }
  cfg.strategies.clear();
  for (const json& s : strategies) {
    if (!s.is_string()) fail("'strategies' entries must be strings");
    try {
      cfg.strategies.push_back(parse_strategy(s.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  for (StrategyKind k : cfg.strategies) {
    if (k != StrategyKind::continuous_gittins) continue;
    for (const ArmSpec& arm : cfg.episode.arms) {
      if (arm.model.kind == ModelKind::rbm ||
          arm.model.kind == ModelKind::ou) {
        fail("strategy 'GI-cts' is undefined for model '" +
             to_string(arm.model.kind) + "'");
      }
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

}  // namespace gittins
