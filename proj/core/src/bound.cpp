#include "rsma/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rsma/errors.hpp"
#include "rsma/parallel.hpp"
#include "rsma/special_functions.hpp"

namespace rsma {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_power(double power) {
    if (!(power > 0.0) || !std::isfinite(power)) throw DomainError("transmit power must be finite and > 0");
}

void check_split(double t) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("power split t must lie in (0, 1], got " + std::to_string(t));
}

void check_users(int num_users) {
    if (num_users < 1) throw DomainError("number of users must be >= 1");
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

// K^2 / (P theta_hat t): argument of the exponential integrals.
double ei_argument(double power, double t, int num_users, double theta_hat) {
    const double k = num_users;
    return k * k / (power * theta_hat * t);
}

}  // namespace

MomentMatch gamma_moment_match(double epsilon, int num_antennas, int num_users) {
    check_users(num_users);
    if (num_antennas < num_users) throw DomainError("gamma_moment_match: requires n_t >= K");
    if (!(std::abs(epsilon) <= 1.0)) throw DomainError("gamma_moment_match: epsilon must lie in [-1, 1]");
    const double e2 = epsilon * epsilon;
    const double n1 = num_antennas + 1.0;
    const double k = num_users;
    const double mean = e2 * n1 + (1.0 - 2.0 * e2) * k;
    const double second = e2 * e2 * n1 + (1.0 - 2.0 * e2) * k;
    if (!(mean > 0.0) || !(second > 0.0))
        throw DegenerateModelError("gamma_moment_match: non-positive moment (eps=" + std::to_string(epsilon) +
                                   ", n_t=" + std::to_string(num_antennas) + ", K=" + std::to_string(num_users) + ")");
    return {mean * mean / second, second / mean};
}

long rounded_order(double d_hat, int num_users) { return round_half_away(d_hat * num_users); }

double log_mean_mu(double d_hat, double theta_hat) {
    if (!(theta_hat > 0.0)) throw DomainError("log_mean_mu: theta_hat must be > 0");
    return std::log(theta_hat) + digamma(d_hat);
}

double private_bound(double t, double power, int num_users, double epsilon, double mu) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("private_bound: t must lie in [0, 1]");
    check_power(power);
    check_users(num_users);
    const double k = num_users;
    const double signal = power / k * std::exp(mu) * t;
    const double leakage = (k - 1.0) * (1.0 - epsilon * epsilon) * power / k * t;
    return k * log2_1p(signal) - k * log2_1p(leakage);
}

double cdf_min_common_sinr_surrogate(double y, double power, double t, int num_users, double d_hat,
                                     double theta_hat) {
    if (!(t > 0.0)) throw DomainError("cdf_min_common_sinr_surrogate: t must be > 0");
    check_power(power);
    check_users(num_users);
    if (!(y >= 0.0)) throw DomainError("cdf_min_common_sinr_surrogate: y must be >= 0");
    if (std::isinf(y)) return 1.0;
    const double k = num_users;
    const double log_tail = -k * y - d_hat * k * std::log1p(y * power * theta_hat * t / k);
    return -std::expm1(log_tail);
}

double expected_log_y(double power, double t, int num_users, double d_hat, double theta_hat) {
    if (!(t > 0.0)) throw DomainError("expected_log_y: t must be > 0");
    check_power(power);
    check_users(num_users);
    const long order = rounded_order(d_hat, num_users);
    if (order < 1) throw DegenerateModelError("expected_log_y: round(d_hat K) < 1");
    const double x = ei_argument(power, t, num_users, theta_hat);
    return -kEulerGamma - std::log(static_cast<double>(num_users)) -
           scaled_exp_integral_sum(static_cast<int>(order), x);
}

double common_bound(double t, double power, int num_users, double d_hat, double theta_hat) {
    check_split(t);
    const double beta = expected_log_y(power, t, num_users, d_hat, theta_hat);
    return log2_1p(power * (1.0 - t) * std::exp(beta));
}

double sum_rate_lower_bound(double t, double power, int num_users, int num_antennas, double epsilon) {
    check_split(t);
    const MomentMatch m = gamma_moment_match(epsilon, num_antennas, num_users);
    const double mu = log_mean_mu(m.d_hat, m.theta_hat);
    return private_bound(t, power, num_users, epsilon, mu) + common_bound(t, power, num_users, m.d_hat, m.theta_hat);
}

BetaAsymptotic beta_asymptotic(double power, double t, int num_users, double d_hat, double theta_hat) {
    if (!(t > 0.0)) throw DomainError("beta_asymptotic: t must be > 0");
    check_power(power);
    check_users(num_users);
    const long order = rounded_order(d_hat, num_users);
    if (order < 2) throw DegenerateModelError("beta_asymptotic: round(d_hat K) < 2");
    const long n = order - 1;
    const double k = num_users;
    const double x = ei_argument(power, t, num_users, theta_hat);

    BetaAsymptotic out;
    out.beta_approx = -kEulerGamma + std::log(k / (power * theta_hat * static_cast<double>(n) * t)) -
                      1.0 / (2.0 * static_cast<double>(n));

    // Gamma(n, -x) / (e^x Gamma(n)) = sum_{j=0}^{n-1} (-x)^j / j!  (integer n)
    // floor(n! e) / n!              = sum_{j=0}^{n} 1 / j!         (n >= 1)
    long double incomplete = 0.0L;
    long double term = 1.0L;
    for (long j = 0; j < n; ++j) {
        incomplete += term;
        term *= -static_cast<long double>(x) / static_cast<long double>(j + 1);
    }
    long double e_partial = 0.0L;
    term = 1.0L;
    for (long j = 0; j <= n; ++j) {
        e_partial += term;
        term /= static_cast<long double>(j + 1);
    }
    const double g = static_cast<double>(incomplete);
    const double s = static_cast<double>(e_partial);
    const double scaled_e1 = scaled_exp_integral_em(1, x);
    out.phi = scaled_e1 * g - x / (1.0 + x) * (s - 2.0) - (g - 1.0 + x) / (1.0 + x);
    return out;
}

AllocationTerms allocation_terms(double power, int num_users, int num_antennas, double epsilon) {
    check_power(power);
    const MomentMatch m = gamma_moment_match(epsilon, num_antennas, num_users);
    const long order = rounded_order(m.d_hat, num_users);
    if (order < 2) throw DegenerateModelError("allocation_terms: round(d_hat K) < 2, rho undefined");
    const double k = num_users;
    const double n = static_cast<double>(order - 1);
    AllocationTerms a;
    a.tau = power * std::exp(log_mean_mu(m.d_hat, m.theta_hat)) / k;
    a.omega = (k - 1.0) * (1.0 - epsilon * epsilon) * power / k;
    a.rho = k / (m.theta_hat * n) * std::exp(-kEulerGamma - 1.0 / (2.0 * n));
    return a;
}

BoundTerms make_bound_terms(double power, int num_users, int num_antennas, double epsilon, double t) {
    check_split(t);
    check_power(power);
    const MomentMatch m = gamma_moment_match(epsilon, num_antennas, num_users);
    BoundTerms b;
    b.d_hat = m.d_hat;
    b.theta_hat = m.theta_hat;
    b.dk_rounded = rounded_order(m.d_hat, num_users);
    b.mu = log_mean_mu(m.d_hat, m.theta_hat);
    b.beta_exact = expected_log_y(power, t, num_users, m.d_hat, m.theta_hat);
    const double k = num_users;
    b.tau = power * std::exp(b.mu) / k;
    b.omega = (k - 1.0) * (1.0 - epsilon * epsilon) * power / k;
    if (b.dk_rounded >= 2) {
        const BetaAsymptotic ba = beta_asymptotic(power, t, num_users, m.d_hat, m.theta_hat);
        b.beta_asymptotic = ba.beta_approx;
        b.phi = ba.phi;
        b.rho = allocation_terms(power, num_users, num_antennas, epsilon).rho;
    } else {
        b.beta_asymptotic = b.phi = b.rho = kNaN;
    }
    b.private_part = private_bound(t, power, num_users, epsilon, b.mu);
    b.common_part = log2_1p(power * (1.0 - t) * std::exp(b.beta_exact));
    b.lower_bound = b.private_part + b.common_part;
    return b;
}

std::vector<AesrEstimate> aesr_monte_carlo_curve(std::span<const double> ts, double power, int num_users,
                                                 int num_antennas, double epsilon, std::uint64_t trials,
                                                 std::uint64_t seed, const RunOptions& options) {
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
    check_power(power);
    for (double t : ts) check_split(t);
    const MomentMatch m = gamma_moment_match(epsilon, num_antennas, num_users);
    const double k = num_users;
    const double leak_scale = 1.0 - epsilon * epsilon;
    const std::size_t n_t = ts.size();
    const auto k_users = static_cast<std::size_t>(num_users);

    const std::size_t chunks = chunk_count(trials);
    std::vector<std::vector<double>> partials(chunks);
    for_each_chunk(chunks, options.threads, [&](std::size_t c) {
        std::vector<double>& acc = partials[c];
        acc.assign(2 * n_t, 0.0);
        std::vector<double> q1(k_users), q2(k_users);
        const std::uint64_t begin = c * kTrialChunk;
        const std::uint64_t end = std::min<std::uint64_t>(trials, begin + kTrialChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomStream rng(seed, i);
            const double x = sample_gamma(m.d_hat, m.theta_hat, rng);
            const double z = num_users > 1 ? leak_scale * sample_gamma(k - 1.0, 1.0, rng) : 0.0;
            for (std::size_t u = 0; u < k_users; ++u) {
                q1[u] = -std::log(rng.uniform());
                q2[u] = sample_gamma(m.d_hat, 1.0, rng);
            }
            for (std::size_t ti = 0; ti < n_t; ++ti) {
                const double t = ts[ti];
                const double per_stream = power * t / k;
                double y = std::numeric_limits<double>::infinity();
                for (std::size_t u = 0; u < k_users; ++u)
                    y = std::min(y, q1[u] / (1.0 + power * m.theta_hat * t / k * q2[u]));
                const double value = k * (log2_1p(per_stream * x) - log2_1p(per_stream * z)) +
                                     log2_1p(power * (1.0 - t) * y);
                acc[2 * ti] += value;
                acc[2 * ti + 1] += value * value;
            }
        }
    });

    std::vector<double> total(2 * n_t, 0.0);
    for (const auto& part : partials)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];

    const double n = static_cast<double>(trials);
    std::vector<AesrEstimate> out(n_t);
    for (std::size_t ti = 0; ti < n_t; ++ti) {
        out[ti].t = ts[ti];
        out[ti].mean = total[2 * ti] / n;
        if (trials > 1) {
            const double var = std::max(0.0, (total[2 * ti + 1] - total[2 * ti] * total[2 * ti] / n) / (n - 1.0));
            out[ti].standard_error = std::sqrt(var / n);
            out[ti].half_width_95 = 1.96 * out[ti].standard_error;
        }
    }
    return out;
}

AesrEstimate aesr_monte_carlo(double t, double power, int num_users, int num_antennas, double epsilon,
                              std::uint64_t trials, std::uint64_t seed, const RunOptions& options) {
    const double ts[] = {t};
    return aesr_monte_carlo_curve(ts, power, num_users, num_antennas, epsilon, trials, seed, options).front();
}

}  // namespace rsma
