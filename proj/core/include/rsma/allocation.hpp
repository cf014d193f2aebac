#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsma/bound.hpp"
#include "rsma/channel.hpp"

namespace rsma {

enum class Branch { interior, saturated_one };
std::string to_string(Branch branch);

struct AllocationResult {
    double t_opt = 1.0;
    Branch branch = Branch::saturated_one;
    // Lower-bound value at t_opt; the Monte Carlo mean for a monte_carlo search.
    double objective_at_t = 0.0;
    // round(d_hat K) < 2 left rho undefined and t_opt fell back to 1.
    bool degenerate_rounding = false;
};

// t = rho (K-1) / (rho (omega + K) - K) when rho (omega + 1) / K > 1, else 1.
// K = 1 always saturates.
AllocationResult t_opt_closed_form(double power, int num_users, int num_antennas, double epsilon);

enum class Objective { lower_bound, monte_carlo };

// {g, 2g, ..., 1}; 1 is appended when 1/g is not an integer.
std::vector<double> search_grid(double granularity);

// Argmax of the objective over search_grid(granularity), ties toward larger t.
// The monte_carlo objective runs mc_cfg with n_t, K, snr_db and epsilon
// replaced by the arguments and scores every grid point on the same draws.
AllocationResult t_opt_exhaustive(double power, int num_users, int num_antennas, double epsilon,
                                  Objective objective, double granularity = 0.001,
                                  const std::optional<ScenarioConfig>& mc_cfg = std::nullopt,
                                  const RunOptions& options = {});

enum class AsymptoticCase { eps0_k2, eps0_large_k, eps1 };

// eps0_k2: 2 / (P - 8.62) for P > 10.62, else 1.
// eps0_large_k: 1 / (P/K + 1 - 1.78 K) when (P + 1) / K^2 > 1.78, else 1.
// eps1: 1.
double t_opt_asymptotic(double power, int num_users, AsymptoticCase which);

}  // namespace rsma
