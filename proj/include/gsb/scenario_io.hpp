// Scenario files: a flat JSON object
//   {"power": 3, "noises": [3, 1], "bandwidth": 1, "source_var": 1}
// `bandwidth` and `source_var` default to 1 when absent.

#pragma once

#include <filesystem>
#include <string_view>

#include "gsb/core.hpp"
#include "json.hpp"

namespace gsb {

RawScenario parse_raw_scenario(std::string_view text);
BroadcastScenario parse_scenario(std::string_view text);
BroadcastScenario read_scenario_file(const std::filesystem::path& path);

nlohmann::json to_json(const BroadcastScenario& s);

/// Finite values are numbers, +inf is the string "inf".
nlohmann::json to_json(ExtReal x);

}  // namespace gsb
