// SPDX-License-Identifier: MIT
//
// Strict JSON experiment configuration.  Schema: top-level keys "q",
// "horizon", "paths", "seed", "arms", "strategies" and optional "grid_step";
// each arm is {"model", "params", "lambda", "reward"} with an exact
// per-model parameter key set.  Unknown keys anywhere are rejected.
#pragma once

#include <string>

#include "gittins/experiments.hpp"

namespace gittins {

// Parses and validates a configuration document.  Any schema violation
// (malformed JSON, unknown or missing keys, wrong types, out-of-range
// values, undefined strategy/model combinations) throws
// std::invalid_argument.
[[nodiscard]] ExperimentConfig parse_config_json(const std::string& text);

// Reads and parses a configuration file; unreadable paths throw
// std::invalid_argument.
[[nodiscard]] ExperimentConfig load_config_file(const std::string& path);

}  // namespace gittins
