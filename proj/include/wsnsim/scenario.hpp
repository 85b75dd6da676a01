#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "wsnsim/model.hpp"

namespace wsnsim {

// Scenario files are flat `key = value` documents, one key per line.
// Blank lines and everything after '#' are ignored. Keys:
//
//   n field_width field_height sink_x sink_y m alpha esep_x esep_beta e0
//   p_opt k_bits e_elec e_da eps_fs eps_mp max_rounds seed protocol ecr_mode
//
// Omitted keys keep their ScenarioConfig defaults.

/// Every key accepted by apply_setting, in file order.
const std::vector<std::string_view>& scenario_keys();

/// Sets one field from its textual value. Throws ConfigError for unknown
/// keys and unparseable values. Does not run validate().
void apply_setting(ScenarioConfig& config, std::string_view key, std::string_view value);

/// Parses a scenario document on top of `base`. `source` names the input in
/// error messages. Throws ConfigError.
ScenarioConfig parse_scenario(std::istream& in, ScenarioConfig base = {}, const std::string& source = "<scenario>");

/// Throws IoError if the file cannot be read, ConfigError if it is malformed.
ScenarioConfig load_scenario(const std::filesystem::path& path, ScenarioConfig base = {});

}  // namespace wsnsim
