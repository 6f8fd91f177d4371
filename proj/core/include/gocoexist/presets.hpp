#pragma once

#include <string>
#include <vector>

#include "gocoexist/sim_engine.hpp"

namespace gocoexist {

/// default, fig6 ... fig13.
const std::vector<std::string>& preset_names();

/// Throws ConfigError (key `preset`) for unknown names.
ScenarioConfig make_preset(const std::string& name);

}  // namespace gocoexist
