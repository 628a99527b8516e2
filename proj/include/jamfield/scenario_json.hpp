#pragma once

#include <optional>
#include <string>

#include "jamfield/scenario.hpp"

namespace jamfield {

// Strict parsing: unknown keys are rejected with the offending key named.
// A seed override replaces the scenario seed and the default seed of any
// embedded trajectory that does not pin its own.
Scenario scenario_from_json(const std::string& json_text,
                            std::optional<uint64_t> seed_override = {});
Scenario scenario_from_file(const std::string& path,
                            std::optional<uint64_t> seed_override = {});

// Presets are expanded at load time; export writes explicit transducers.
std::string scenario_to_json(const Scenario& s);

}  // namespace jamfield
