#pragma once

#include "arco/problem.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace arco {

nlohmann::json to_json(const ExperimentConfig& config);

/// Accepts a config object, or a run manifest holding one under "config".
/// Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize(const ExperimentConfig& config);

/// FNV-1a over the canonical serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace arco
