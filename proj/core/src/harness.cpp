#include "rsma/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "rsma/allocation.hpp"
#include "rsma/bound.hpp"
#include "rsma/errors.hpp"
#include "rsma/scenario_json.hpp"

namespace rsma {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

constexpr Scheme kAllSchemes[] = {Scheme::rsma_closed_form, Scheme::rsma_exhaustive_bound,
                                  Scheme::rsma_exhaustive_mc, Scheme::sdma, Scheme::bound_curve};

SweepRow row_for(const ScenarioConfig& cfg, double epsilon, Scheme scheme, double axis_value) {
    SweepRow r;
    r.n_t = cfg.num_antennas;
    r.K = cfg.num_users;
    r.snr_db = cfg.snr_db;
    r.speed_kmh = cfg.speed_kmh;
    r.carrier_hz = cfg.carrier_hz;
    r.delay_s = cfg.delay_s;
    r.epsilon = epsilon;
    r.common_precoder_mode = to_string(cfg.common_precoder_mode);
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    r.scheme = to_string(scheme);
    r.axis_value = axis_value;
    return r;
}

void warn(std::vector<std::string>* warnings, std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
}

void run_t_axis(const SweepSpec& spec, const SweepOptions& options, std::vector<SweepRow>& rows,
                std::vector<std::string>* warnings) {
    for (Scheme s : spec.schemes)
        if (s != Scheme::bound_curve)
            warn(warnings, "scheme " + to_string(s) + " does not apply to the t axis; skipped");
    if (std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::bound_curve) == spec.schemes.end())
        throw ConfigError("schemes", "no listed scheme applies to the t axis (only bound_curve does)");

    const ScenarioConfig& cfg = spec.base;
    const double eps = cfg.epsilon();
    const double power = cfg.power();
    const auto mc = monte_carlo_sum_rate_curve(cfg, spec.values, RunOptions{options.threads});
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        SweepRow r = row_for(cfg, eps, Scheme::bound_curve, spec.values[i]);
        r.t_used = spec.values[i];
        r.sum_rate = mc[i].mean;
        r.half_width_95 = mc[i].half_width_95;
        r.bound_value = sum_rate_lower_bound(r.t_used, power, cfg.num_users, cfg.num_antennas, eps);
        rows.push_back(std::move(r));
    }
}

void run_point(const SweepSpec& spec, double value, const SweepOptions& options, std::vector<SweepRow>& rows,
               std::vector<std::string>* warnings) {
    ScenarioConfig cfg = spec.base;
    if (spec.sweep_axis == SweepAxis::snr_db)
        cfg.snr_db = value;
    else
        cfg.speed_kmh = value;
    cfg.validate();
    const double eps = cfg.epsilon();
    const double power = cfg.power();
    const int k = cfg.num_users;
    const int n = cfg.num_antennas;

    // Resolve every scheme's t first, then score all of them on one set of draws.
    std::vector<double> ts;
    std::vector<std::size_t> t_index(spec.schemes.size());
    std::optional<std::size_t> grid_begin;
    std::vector<double> grid;
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
        double t = 1.0;
        switch (spec.schemes[si]) {
            case Scheme::rsma_closed_form: {
                const AllocationResult a = t_opt_closed_form(power, k, n, eps);
                if (a.degenerate_rounding)
                    warn(warnings, "degenerate rounding at " + to_string(spec.sweep_axis) + "=" +
                                       format_real(value) + ": round(d_hat K) < 2, using t = 1");
                t = a.t_opt;
                break;
            }
            case Scheme::rsma_exhaustive_bound:
            case Scheme::bound_curve:
                t = t_opt_exhaustive(power, k, n, eps, Objective::lower_bound, options.granularity).t_opt;
                break;
            case Scheme::rsma_exhaustive_mc:
                if (!grid_begin) {
                    grid = search_grid(options.granularity);
                    grid_begin = ts.size();
                    ts.insert(ts.end(), grid.begin(), grid.end());
                }
                t_index[si] = SIZE_MAX;
                continue;
            case Scheme::sdma:
                t = 1.0;
                break;
        }
        t_index[si] = ts.size();
        ts.push_back(t);
    }

    const auto mc = monte_carlo_sum_rate_curve(cfg, ts, RunOptions{options.threads});
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
        std::size_t idx = t_index[si];
        if (idx == SIZE_MAX) {
            idx = *grid_begin;
            for (std::size_t g = *grid_begin; g < *grid_begin + grid.size(); ++g)
                if (mc[g].mean >= mc[idx].mean) idx = g;
        }
        SweepRow r = row_for(cfg, eps, spec.schemes[si], value);
        r.t_used = ts[idx];
        r.sum_rate = mc[idx].mean;
        r.half_width_95 = mc[idx].half_width_95;
        r.bound_value = sum_rate_lower_bound(r.t_used, power, k, n, eps);
        rows.push_back(std::move(r));
    }
}

}  // namespace

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::t: return "t";
        case SweepAxis::snr_db: return "snr_db";
        case SweepAxis::speed_kmh: return "speed_kmh";
    }
    return "?";
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::rsma_closed_form: return "rsma_closed_form";
        case Scheme::rsma_exhaustive_bound: return "rsma_exhaustive_bound";
        case Scheme::rsma_exhaustive_mc: return "rsma_exhaustive_mc";
        case Scheme::sdma: return "sdma";
        case Scheme::bound_curve: return "bound_curve";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    for (Scheme s : kAllSchemes)
        if (to_string(s) == name) return s;
    throw ConfigError("schemes", "unknown scheme '" + name + "'");
}

void SweepSpec::validate() const {
    base.validate();
    if (values.empty()) throw ConfigError("values", "must be nonempty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) throw ConfigError("values", "must be finite");
        if (i > 0 && !(values[i] > values[i - 1])) throw ConfigError("values", "must be strictly increasing");
    }
    if (sweep_axis == SweepAxis::t)
        for (double t : values)
            if (!(t > 0.0 && t <= 1.0)) throw ConfigError("values", "t values must lie in (0, 1]");
    if (sweep_axis == SweepAxis::speed_kmh && values.front() < 0.0)
        throw ConfigError("values", "speeds must be >= 0");
    if (schemes.empty()) throw ConfigError("schemes", "must be nonempty");
    for (std::size_t i = 0; i < schemes.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (schemes[i] == schemes[j]) throw ConfigError("schemes", "duplicate scheme " + to_string(schemes[i]));
}

SweepSpec sweep_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("sweep", "expected a JSON object");
    for (const auto& item : doc.items()) {
        const auto& key = item.key();
        if (key != "scenario" && key != "sweep_axis" && key != "values" && key != "schemes")
            throw ConfigError(key, "unknown key");
    }
    for (const char* required : {"scenario", "sweep_axis", "values", "schemes"})
        if (!doc.contains(required)) throw ConfigError(required, "missing required key");

    SweepSpec spec;
    spec.base = scenario_from_json(doc.at("scenario"));

    const auto& axis = doc.at("sweep_axis");
    if (!axis.is_string()) throw ConfigError("sweep_axis", "expected a string");
    const std::string axis_name = axis.get<std::string>();
    if (axis_name == "t")
        spec.sweep_axis = SweepAxis::t;
    else if (axis_name == "snr_db")
        spec.sweep_axis = SweepAxis::snr_db;
    else if (axis_name == "speed_kmh")
        spec.sweep_axis = SweepAxis::speed_kmh;
    else
        throw ConfigError("sweep_axis", "expected t, snr_db or speed_kmh, got '" + axis_name + "'");

    const auto& values = doc.at("values");
    if (!values.is_array()) throw ConfigError("values", "expected an array of numbers");
    for (const auto& v : values) {
        if (!v.is_number()) throw ConfigError("values", "expected an array of numbers");
        spec.values.push_back(v.get<double>());
    }

    const auto& schemes = doc.at("schemes");
    if (!schemes.is_array()) throw ConfigError("schemes", "expected an array of strings");
    for (const auto& s : schemes) {
        if (!s.is_string()) throw ConfigError("schemes", "expected an array of strings");
        spec.schemes.push_back(parse_scheme(s.get<std::string>()));
    }
    spec.validate();
    return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options,
                                std::vector<std::string>* warnings) {
    spec.validate();
    search_grid(options.granularity);
    std::vector<SweepRow> rows;
    if (spec.sweep_axis == SweepAxis::t) {
        run_t_axis(spec, options, rows, warnings);
    } else {
        for (double v : spec.values) run_point(spec, v, options, rows, warnings);
    }
    return rows;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const SweepRow& r : rows) {
        out << r.n_t << ',' << r.K << ',' << format_real(r.snr_db) << ',' << format_real(r.speed_kmh) << ','
            << format_real(r.carrier_hz) << ',' << format_real(r.delay_s) << ',' << format_real(r.epsilon) << ','
            << r.common_precoder_mode << ',' << r.trials << ',' << r.seed << ',' << r.scheme << ','
            << format_real(r.axis_value) << ',' << format_real(r.t_used) << ',' << format_real(r.sum_rate) << ','
            << format_real(r.half_width_95) << ',';
        if (r.bound_value) out << format_real(*r.bound_value);
        out << '\n';
    }
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    emit_csv(rows, out);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace rsma
