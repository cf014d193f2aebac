#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "rsma/channel.hpp"

namespace rsma {

// JSON keys: n_t, K, snr_db (required); speed_kmh, carrier_hz, delay_s,
// epsilon_override (number or null), common_precoder_mode, trials, seed
// (optional). Unknown keys and type mismatches throw ConfigError naming the key.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

// Reads and parses a JSON file. Unreadable files throw IoError, malformed JSON ConfigError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace rsma
