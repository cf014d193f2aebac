// rsma: bound / alloc / sumrate / sweep front end for the rsma core library.
//
// Exit codes: 0 ok, 2 usage, 3 configuration, 4 numeric domain, 5 I/O.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rsma/allocation.hpp"
#include "rsma/bound.hpp"
#include "rsma/errors.hpp"
#include "rsma/harness.hpp"
#include "rsma/scenario_json.hpp"
#include "rsma/transceiver.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kConfig = 3, kNumeric = 4, kIo = 5, kInternal = 1 };

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out;
    double granularity = 0.001;
    unsigned threads = 0;
    bool json = false;
};

std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// NaN is not representable in JSON.
nlohmann::json json_real(double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); }

void emit(std::ostream& os, const CommonFlags& flags, const nlohmann::json& doc,
          const std::vector<std::pair<std::string, std::string>>& lines) {
    if (flags.json) {
        os << doc.dump(2) << '\n';
        return;
    }
    for (const auto& [k, v] : lines) os << k << " = " << v << '\n';
}

rsma::ScenarioConfig load_scenario(const CommonFlags& flags) {
    rsma::ScenarioConfig cfg = rsma::scenario_from_json(rsma::read_json_file(flags.config));
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.trials) cfg.trials = *flags.trials;
    cfg.validate();
    return cfg;
}

int run_bound(const CommonFlags& flags, double t, double step) {
    const rsma::ScenarioConfig cfg = load_scenario(flags);
    if (!(step > 0.0 && step <= 1.0)) throw rsma::ConfigError("step", "must lie in (0, 1]");
    const double eps = cfg.epsilon();
    const double power = cfg.power();
    const rsma::BoundTerms b = rsma::make_bound_terms(power, cfg.num_users, cfg.num_antennas, eps, t);

    std::vector<double> ts;
    for (long k = 1;; ++k) {
        const double v = static_cast<double>(k) * step;
        if (v > 1.0 + 1e-12) break;
        ts.push_back(std::min(v, 1.0));
    }
    if (ts.back() != 1.0) ts.push_back(1.0);

    nlohmann::json doc = {{"scenario", rsma::scenario_to_json(cfg)},
                          {"epsilon", eps},
                          {"t", t},
                          {"d_hat", b.d_hat},
                          {"theta_hat", b.theta_hat},
                          {"dk_rounded", b.dk_rounded},
                          {"mu", b.mu},
                          {"beta_exact", b.beta_exact},
                          {"beta_asymptotic", json_real(b.beta_asymptotic)},
                          {"phi", json_real(b.phi)},
                          {"tau", b.tau},
                          {"omega", b.omega},
                          {"rho", json_real(b.rho)},
                          {"private_part", b.private_part},
                          {"common_part", b.common_part},
                          {"lower_bound", b.lower_bound}};
    std::vector<std::pair<std::string, std::string>> lines = {
        {"epsilon", real(eps)},           {"t", real(t)},
        {"d_hat", real(b.d_hat)},         {"theta_hat", real(b.theta_hat)},
        {"dk_rounded", std::to_string(b.dk_rounded)},
        {"mu", real(b.mu)},               {"beta_exact", real(b.beta_exact)},
        {"beta_asymptotic", real(b.beta_asymptotic)},
        {"phi", real(b.phi)},             {"tau", real(b.tau)},
        {"omega", real(b.omega)},         {"rho", real(b.rho)},
        {"private_part", real(b.private_part)},
        {"common_part", real(b.common_part)},
        {"lower_bound", real(b.lower_bound)}};
    nlohmann::json curve = nlohmann::json::array();
    for (double tc : ts) {
        const double v = rsma::sum_rate_lower_bound(tc, power, cfg.num_users, cfg.num_antennas, eps);
        curve.push_back({{"t", tc}, {"lower_bound", v}});
        lines.emplace_back("curve t=" + real(tc), real(v));
    }
    doc["curve"] = std::move(curve);
    if (b.dk_rounded < 2) std::cerr << "warning: round(d_hat K) < 2; asymptotic terms undefined\n";
    emit(std::cout, flags, doc, lines);
    return kOk;
}

int run_alloc(const CommonFlags& flags, bool exhaustive) {
    const rsma::ScenarioConfig cfg = load_scenario(flags);
    const double eps = cfg.epsilon();
    const double power = cfg.power();
    const rsma::AllocationResult a = rsma::t_opt_closed_form(power, cfg.num_users, cfg.num_antennas, eps);
    if (a.degenerate_rounding) std::cerr << "warning: round(d_hat K) < 2; rho undefined, using t_opt = 1\n";

    nlohmann::json doc = {{"scenario", rsma::scenario_to_json(cfg)},
                          {"epsilon", eps},
                          {"t_opt", a.t_opt},
                          {"branch", rsma::to_string(a.branch)},
                          {"objective_at_t", a.objective_at_t},
                          {"degenerate_rounding", a.degenerate_rounding}};
    std::vector<std::pair<std::string, std::string>> lines = {{"epsilon", real(eps)},
                                                              {"t_opt", real(a.t_opt)},
                                                              {"branch", rsma::to_string(a.branch)},
                                                              {"objective_at_t", real(a.objective_at_t)}};
    if (exhaustive) {
        const rsma::AllocationResult e = rsma::t_opt_exhaustive(power, cfg.num_users, cfg.num_antennas, eps,
                                                                rsma::Objective::lower_bound, flags.granularity);
        doc["exhaustive"] = {{"t_opt", e.t_opt},
                             {"branch", rsma::to_string(e.branch)},
                             {"objective_at_t", e.objective_at_t},
                             {"granularity", flags.granularity}};
        lines.emplace_back("exhaustive_t_opt", real(e.t_opt));
        lines.emplace_back("exhaustive_objective_at_t", real(e.objective_at_t));
        lines.emplace_back("closed_form_over_exhaustive", real(a.objective_at_t / e.objective_at_t));
    }
    emit(std::cout, flags, doc, lines);
    return kOk;
}

int run_sumrate(const CommonFlags& flags, std::optional<double> t_flag) {
    const rsma::ScenarioConfig cfg = load_scenario(flags);
    const double eps = cfg.epsilon();
    double t = 1.0;
    if (t_flag) {
        t = *t_flag;
    } else {
        const auto a = rsma::t_opt_closed_form(cfg.power(), cfg.num_users, cfg.num_antennas, eps);
        t = a.t_opt;
    }
    const rsma::SumRateEstimate s = rsma::monte_carlo_sum_rate(cfg, t, rsma::RunOptions{flags.threads});
    nlohmann::json doc = {{"scenario", rsma::scenario_to_json(cfg)},
                          {"epsilon", eps},
                          {"t", s.t},
                          {"sum_rate", s.mean},
                          {"half_width_95", s.half_width_95},
                          {"common_rate", s.common_mean},
                          {"private_rates", s.private_means},
                          {"trials", s.trials},
                          {"redraws", s.redraws}};
    std::vector<std::pair<std::string, std::string>> lines = {
        {"epsilon", real(eps)},       {"t", real(s.t)},
        {"sum_rate", real(s.mean)},   {"half_width_95", real(s.half_width_95)},
        {"common_rate", real(s.common_mean)},
        {"trials", std::to_string(s.trials)},
        {"redraws", std::to_string(s.redraws)}};
    for (std::size_t k = 0; k < s.private_means.size(); ++k)
        lines.emplace_back("private_rate[" + std::to_string(k) + "]", real(s.private_means[k]));
    emit(std::cout, flags, doc, lines);
    return kOk;
}

int run_sweep_cmd(const CommonFlags& flags) {
    rsma::SweepSpec spec = rsma::sweep_from_json(rsma::read_json_file(flags.config));
    if (flags.seed) spec.base.seed = *flags.seed;
    if (flags.trials) spec.base.trials = *flags.trials;
    spec.validate();
    std::vector<std::string> warnings;
    const auto rows = rsma::run_sweep(spec, rsma::SweepOptions{flags.granularity, flags.threads}, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    if (flags.out.empty() || flags.out == "-")
        rsma::emit_csv(rows, std::cout);
    else
        rsma::write_csv(rows, flags.out);
    return kOk;
}

void add_common(CLI::App* sub, CommonFlags& flags, bool with_granularity) {
    sub->add_option("--config", flags.config, "JSON file (scenario, or sweep spec for `sweep`)")
        ->required();
    sub->add_option("--seed", flags.seed, "override the configured seed");
    sub->add_option("--trials", flags.trials, "override the configured Monte Carlo trial count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", flags.threads, "worker threads, 0 = hardware concurrency (results do not change)");
    sub->add_flag("--json", flags.json, "print JSON instead of key = value lines");
    if (with_granularity)
        sub->add_option("--granularity", flags.granularity, "exhaustive-search step over (0, 1]")
            ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rate-splitting multiple access under delayed CSIT: bounds, power split and Monte Carlo sum-rate"};
    app.require_subcommand(1);
    CommonFlags flags;

    double bound_t = 0.5;
    double bound_step = 0.05;
    auto* bound = app.add_subcommand("bound", "analytical terms at one t plus the lower-bound curve");
    add_common(bound, flags, false);
    bound->add_option("--t", bound_t, "private power fraction for the term dump")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    bound->add_option("--step", bound_step, "t spacing of the printed curve")->capture_default_str();

    bool exhaustive = false;
    auto* alloc = app.add_subcommand("alloc", "closed-form power split");
    add_common(alloc, flags, true);
    alloc->add_flag("--exhaustive", exhaustive, "also search the lower bound over the granularity grid");

    std::optional<double> sumrate_t;
    auto* sumrate = app.add_subcommand("sumrate", "Monte Carlo ergodic sum-rate at one t");
    add_common(sumrate, flags, false);
    sumrate->add_option("--t", sumrate_t, "private power fraction (default: closed-form t_opt)")
        ->check(CLI::Range(0.0, 1.0));

    auto* sweep = app.add_subcommand("sweep", "run a sweep spec and write CSV");
    add_common(sweep, flags, true);
    sweep->add_option("--out", flags.out, "CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*bound) return run_bound(flags, bound_t, bound_step);
        if (*alloc) return run_alloc(flags, exhaustive);
        if (*sumrate) return run_sumrate(flags, sumrate_t);
        if (*sweep) return run_sweep_cmd(flags);
    } catch (const rsma::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const rsma::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const rsma::Error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
