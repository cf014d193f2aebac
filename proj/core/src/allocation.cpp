#include "rsma/allocation.hpp"

#include <cmath>
#include <string>

#include "rsma/errors.hpp"

namespace rsma {

std::string to_string(Branch branch) {
    return branch == Branch::interior ? "interior" : "saturated_one";
}

AllocationResult t_opt_closed_form(double power, int num_users, int num_antennas, double epsilon) {
    const MomentMatch m = gamma_moment_match(epsilon, num_antennas, num_users);
    AllocationResult r;
    if (rounded_order(m.d_hat, num_users) < 2) {
        r.degenerate_rounding = true;
    } else if (num_users >= 2) {
        const AllocationTerms a = allocation_terms(power, num_users, num_antennas, epsilon);
        const double k = num_users;
        if (a.rho * (a.omega + 1.0) / k > 1.0) {
            r.t_opt = a.rho * (k - 1.0) / (a.rho * (a.omega + k) - k);
            r.branch = Branch::interior;
        }
    }
    r.objective_at_t = sum_rate_lower_bound(r.t_opt, power, num_users, num_antennas, epsilon);
    return r;
}

std::vector<double> search_grid(double granularity) {
    if (!(granularity > 0.0 && granularity <= 0.5))
        throw ConfigError("granularity", "must lie in (0, 0.5]");
    std::vector<double> grid;
    for (long k = 1;; ++k) {
        double t = static_cast<double>(k) * granularity;
        if (std::abs(t - 1.0) <= 1e-12) t = 1.0;
        if (t > 1.0) break;
        grid.push_back(t);
        if (t == 1.0) break;
    }
    if (grid.back() != 1.0) grid.push_back(1.0);
    return grid;
}

AllocationResult t_opt_exhaustive(double power, int num_users, int num_antennas, double epsilon,
                                  Objective objective, double granularity,
                                  const std::optional<ScenarioConfig>& mc_cfg, const RunOptions& options) {
    if (objective == Objective::monte_carlo && !mc_cfg)
        throw ConfigError("mc_cfg", "monte_carlo objective needs a scenario configuration");
    const std::vector<double> grid = search_grid(granularity);
    std::vector<double> values(grid.size());
    if (objective == Objective::lower_bound) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            values[i] = sum_rate_lower_bound(grid[i], power, num_users, num_antennas, epsilon);
    } else {
        ScenarioConfig cfg = *mc_cfg;
        cfg.num_antennas = num_antennas;
        cfg.num_users = num_users;
        cfg.snr_db = 10.0 * std::log10(power);
        cfg.epsilon_override = epsilon;
        const auto curve = monte_carlo_sum_rate_curve(cfg, grid, options);
        for (std::size_t i = 0; i < grid.size(); ++i) values[i] = curve[i].mean;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (values[i] >= values[best]) best = i;

    AllocationResult r;
    r.t_opt = grid[best];
    r.branch = r.t_opt == 1.0 ? Branch::saturated_one : Branch::interior;
    r.objective_at_t = values[best];
    return r;
}

double t_opt_asymptotic(double power, int num_users, AsymptoticCase which) {
    switch (which) {
        case AsymptoticCase::eps0_k2:
            return power > 10.62 ? 2.0 / (power - 8.62) : 1.0;
        case AsymptoticCase::eps0_large_k: {
            const double k = num_users;
            if (1.78 < (power + 1.0) / (k * k)) return 1.0 / (power / k + 1.0 - 1.78 * k);
            return 1.0;
        }
        case AsymptoticCase::eps1:
            return 1.0;
    }
    return 1.0;
}

}  // namespace rsma
