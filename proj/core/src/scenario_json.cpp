#include "rsma/scenario_json.hpp"

#include <array>
#include <fstream>
#include <limits>
#include <string_view>

#include "rsma/errors.hpp"

namespace rsma {

namespace {

constexpr std::array<std::string_view, 10> kScenarioKeys = {
    "n_t", "K", "snr_db", "speed_kmh", "carrier_hz", "delay_s",
    "epsilon_override", "common_precoder_mode", "trials", "seed"};

double number_field(const nlohmann::json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ConfigError(key, "expected a number");
    return v.get<double>();
}

template <class Int>
Int integer_field(const nlohmann::json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max()))
            throw ConfigError(key, "value out of range");
        return static_cast<Int>(u);
    }
    if (v.is_number_integer()) {
        const auto i = v.get<std::int64_t>();
        if (i < 0) {
            if constexpr (std::is_unsigned_v<Int>) throw ConfigError(key, "must be non-negative");
        }
        if (i < static_cast<std::int64_t>(std::numeric_limits<Int>::min()) ||
            (i > 0 && static_cast<std::uint64_t>(i) > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())))
            throw ConfigError(key, "value out of range");
        return static_cast<Int>(i);
    }
    throw ConfigError(key, "expected an integer");
}

}  // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("scenario", "expected a JSON object");
    for (const auto& item : doc.items()) {
        bool known = false;
        for (auto k : kScenarioKeys) known = known || item.key() == k;
        if (!known) throw ConfigError(item.key(), "unknown key");
    }
    for (const char* required : {"n_t", "K", "snr_db"})
        if (!doc.contains(required)) throw ConfigError(required, "missing required key");

    ScenarioConfig cfg;
    cfg.num_antennas = integer_field<int>(doc, "n_t");
    cfg.num_users = integer_field<int>(doc, "K");
    cfg.snr_db = number_field(doc, "snr_db");
    if (doc.contains("speed_kmh")) cfg.speed_kmh = number_field(doc, "speed_kmh");
    if (doc.contains("carrier_hz")) cfg.carrier_hz = number_field(doc, "carrier_hz");
    if (doc.contains("delay_s")) cfg.delay_s = number_field(doc, "delay_s");
    if (doc.contains("epsilon_override") && !doc.at("epsilon_override").is_null())
        cfg.epsilon_override = number_field(doc, "epsilon_override");
    if (doc.contains("common_precoder_mode")) {
        const auto& v = doc.at("common_precoder_mode");
        if (!v.is_string()) throw ConfigError("common_precoder_mode", "expected a string");
        cfg.common_precoder_mode = parse_common_precoder_mode(v.get<std::string>());
    }
    if (doc.contains("trials")) cfg.trials = integer_field<std::uint64_t>(doc, "trials");
    if (doc.contains("seed")) cfg.seed = integer_field<std::uint64_t>(doc, "seed");
    cfg.validate();
    return cfg;
}

nlohmann::json scenario_to_json(const ScenarioConfig& cfg) {
    nlohmann::json doc = {
        {"n_t", cfg.num_antennas},
        {"K", cfg.num_users},
        {"snr_db", cfg.snr_db},
        {"speed_kmh", cfg.speed_kmh},
        {"carrier_hz", cfg.carrier_hz},
        {"delay_s", cfg.delay_s},
        {"epsilon_override", nullptr},
        {"common_precoder_mode", to_string(cfg.common_precoder_mode)},
        {"trials", cfg.trials},
        {"seed", cfg.seed},
    };
    if (cfg.epsilon_override) doc["epsilon_override"] = *cfg.epsilon_override;
    return doc;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": malformed JSON: " + e.what());
    }
}

}  // namespace rsma
