#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsma/transceiver.hpp"

namespace rsma {

// Gamma(d_hat, theta_hat) matched to the first two moments of the signal plus
// leakage power X = sum_j |h_k^H[m] p_j|^2 seen by one user.
struct MomentMatch {
    double d_hat = 0.0;
    double theta_hat = 0.0;
};

MomentMatch gamma_moment_match(double epsilon, int num_antennas, int num_users);

// round(d_hat * K), half away from zero: the number of exponential-integral
// terms in the common-stream bound.
long rounded_order(double d_hat, int num_users);

// E[ln X~] = ln(theta_hat) + psi(d_hat).
double log_mean_mu(double d_hat, double theta_hat);

// Lower bound on the K private-stream rates (bits/channel use):
// K log2(1 + P e^mu t / K) - K log2(1 + (K-1)(1-eps^2) P t / K).
double private_bound(double t, double power, int num_users, double epsilon, double mu);

// CDF surrogate of the minimum normalized common SINR,
// 1 - e^{-K y} / (1 + y P theta_hat t / K)^{d_hat K}, with the real exponent.
double cdf_min_common_sinr_surrogate(double y, double power, double t, int num_users, double d_hat,
                                     double theta_hat);

// beta = E[ln Y~] = -gamma - ln K - e^x sum_{m=1}^{N} E_m(x), x = K^2 / (P theta_hat t),
// N = round(d_hat K). Natural-log units.
double expected_log_y(double power, double t, int num_users, double d_hat, double theta_hat);

// log2(1 + P (1 - t) e^beta). Accepts t = 1, where it is exactly 0.
double common_bound(double t, double power, int num_users, double d_hat, double theta_hat);

// private_bound + common_bound for t in (0, 1].
double sum_rate_lower_bound(double t, double power, int num_users, int num_antennas, double epsilon);

// High-SNR form of beta and the literal phi remainder of its expansion.
struct BetaAsymptotic {
    double beta_approx = 0.0;
    double phi = 0.0;
};
BetaAsymptotic beta_asymptotic(double power, double t, int num_users, double d_hat, double theta_hat);

// Constants of the high-SNR sum-rate surrogate -K log2(1/(tau t) + omega/tau) + log2(1 - rho + rho/t).
struct AllocationTerms {
    double tau = 0.0;
    double omega = 0.0;
    double rho = 0.0;
};
AllocationTerms allocation_terms(double power, int num_users, int num_antennas, double epsilon);

// Every analytical quantity for one scenario at one t. beta_asymptotic, phi
// and rho are NaN when round(d_hat K) < 2.
struct BoundTerms {
    double d_hat = 0.0;
    double theta_hat = 0.0;
    long dk_rounded = 0;
    double mu = 0.0;
    double beta_exact = 0.0;
    double beta_asymptotic = 0.0;
    double phi = 0.0;
    double tau = 0.0;
    double omega = 0.0;
    double rho = 0.0;
    double private_part = 0.0;
    double common_part = 0.0;
    double lower_bound = 0.0;
};
BoundTerms make_bound_terms(double power, int num_users, int num_antennas, double epsilon, double t);

// Monte Carlo estimate of the approximated ergodic sum-rate: X~ ~ Gamma(d_hat, theta_hat),
// Z~ = (1-eps^2) Gamma(K-1, 1) (0 for K = 1), Y~ = min_k Q1_k / (1 + P theta_hat t Q2_k / K)
// with Q1 ~ Exp(1), Q2 ~ Gamma(d_hat, 1). Trial i samples from RandomStream(seed, i);
// every t in `ts` reuses the same samples.
struct AesrEstimate {
    double t = 1.0;
    double mean = 0.0;
    double half_width_95 = 0.0;
    double standard_error = 0.0;
};
std::vector<AesrEstimate> aesr_monte_carlo_curve(std::span<const double> ts, double power, int num_users,
                                                 int num_antennas, double epsilon, std::uint64_t trials,
                                                 std::uint64_t seed, const RunOptions& options = {});
AesrEstimate aesr_monte_carlo(double t, double power, int num_users, int num_antennas, double epsilon,
                              std::uint64_t trials, std::uint64_t seed, const RunOptions& options = {});

}  // namespace rsma
