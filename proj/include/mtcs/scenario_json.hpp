#pragma once

#include <nlohmann/json.hpp>

#include "mtcs/scenario.hpp"

namespace mtcs {

nlohmann::json scenario_to_json(const ScenarioConfig& config);

// Overlays `doc` onto `base`; throws ScenarioError{parse} naming the offending
// field. Does not validate.
ScenarioConfig scenario_from_json(const nlohmann::json& doc, ScenarioConfig base);

}  // namespace mtcs
