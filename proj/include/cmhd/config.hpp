#pragma once

#include <json.hpp>

#include "cmhd/dynamics.hpp"

namespace cmhd {

/// Raised on malformed configuration files; the CLI maps it to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

SimulationConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimulationConfig& cfg);

/// Parses and validates a JSON config file; error messages name the path.
SimulationConfig load_config(const std::string& path);

/// The documented schema (served by the print-schema subcommand).
std::string config_schema();

} // namespace cmhd
