#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rsma/channel.hpp"
#include "rsma/transceiver.hpp"

namespace rsma {

enum class SweepAxis { t, snr_db, speed_kmh };
std::string to_string(SweepAxis axis);

enum class Scheme { rsma_closed_form, rsma_exhaustive_bound, rsma_exhaustive_mc, sdma, bound_curve };
std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& name);

struct SweepSpec {
    ScenarioConfig base;
    SweepAxis sweep_axis = SweepAxis::snr_db;
    std::vector<double> values;  // nonempty, strictly increasing
    std::vector<Scheme> schemes;

    // Throws ConfigError for empty or unordered values, t values outside
    // (0, 1], duplicate schemes or an invalid base scenario.
    void validate() const;
};

// {"scenario": {...}, "sweep_axis": "t" | "snr_db" | "speed_kmh",
//  "values": [...], "schemes": [...]}. Unknown keys throw ConfigError.
SweepSpec sweep_from_json(const nlohmann::json& doc);

struct SweepRow {
    int n_t = 0;
    int K = 0;
    double snr_db = 0.0;
    double speed_kmh = 0.0;
    double carrier_hz = 0.0;
    double delay_s = 0.0;
    double epsilon = 0.0;
    std::string common_precoder_mode;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string scheme;
    double axis_value = 0.0;
    double t_used = 1.0;
    double sum_rate = 0.0;
    double half_width_95 = 0.0;
    std::optional<double> bound_value;
};

struct SweepOptions {
    double granularity = 0.001;
    unsigned threads = 0;
};

// Rows in (axis value, scheme) order. On the t axis only bound_curve applies:
// t is the axis value. On the snr_db / speed_kmh axes each scheme resolves its
// own t (closed form, exhaustive search over the bound or the Monte Carlo
// estimate, 1 for sdma, bound argmax for bound_curve). epsilon follows the
// mobility parameters per point unless base.epsilon_override is set. Every
// cell reuses base.seed. Non-fatal notes (dropped schemes, degenerate
// rounding) are appended to `warnings` when given.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options = {},
                                std::vector<std::string>* warnings = nullptr);

inline constexpr const char* kCsvHeader =
    "n_t,K,snr_db,speed_kmh,carrier_hz,delay_s,epsilon,common_precoder_mode,trials,seed,"
    "scheme,axis_value,t_used,sum_rate,half_width_95,bound_value";

// Header plus one line per row, reals with 10 significant digits, an empty
// bound_value field when absent.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
// Throws IoError naming the path when it cannot be written.
void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path);

}  // namespace rsma
