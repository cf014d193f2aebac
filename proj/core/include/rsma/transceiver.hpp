#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rsma/channel.hpp"
#include "rsma/random.hpp"

namespace rsma {

// Unit-norm common precoder, K unit-norm private precoders (columns) and the
// private power fraction t: P(1-t) goes to the common stream, P t / K to each
// private stream.
struct PrecoderSet {
    Eigen::VectorXcd common;
    Eigen::MatrixXcd privates;
    double t = 1.0;
};

// Instantaneous rates in bits per channel use; sum = common + sum(private).
struct RateSample {
    double common_rate = 0.0;
    std::vector<double> private_rates;
    double sum = 0.0;
};

// Squared magnitudes seen by each user through the TRUE channel:
// cross(k, j) = |h_k^H p_j|^2 and common(k) = |h_k^H p_c|^2. Everything the
// SINRs need for any (t, P), so one realization can be scored at many t.
struct LinkGains {
    Eigen::MatrixXd cross;
    Eigen::VectorXd common;
};

// Unit-norm columns of the right pseudo-inverse of csit^H. Throws
// DegenerateChannelError when the numerical rank (tolerance 1e-12 times the
// largest singular value) is below K.
Eigen::MatrixXcd zf_precoders(const Eigen::MatrixXcd& csit);

// random_isotropic: normalized CN(0, I) draw from `rng`, independent of csit.
// dominant_eigenvector: dominant left singular vector of csit (rng untouched).
Eigen::VectorXcd common_precoder(const Eigen::MatrixXcd& csit, CommonPrecoderMode mode, RandomStream& rng);

// ZF privates plus the common precoder, both from csit.
PrecoderSet make_precoders(const Eigen::MatrixXcd& csit, CommonPrecoderMode mode, double t, RandomStream& rng);

LinkGains link_gains(const ChannelState& state, const PrecoderSet& precoders);

// Common SINR per user (interference sums over all K private streams) and
// private SINR per user (interference from the other K-1 streams).
RateSample rates_from_gains(const LinkGains& gains, double t, double power);
RateSample instantaneous_rates(const ChannelState& state, const PrecoderSet& precoders, double power);

struct RunOptions {
    unsigned threads = 0;  // 0: hardware concurrency. Never changes results.
};

struct SumRateEstimate {
    double t = 1.0;
    double mean = 0.0;
    double half_width_95 = 0.0;  // 1.96 * sample std / sqrt(trials)
    double common_mean = 0.0;
    std::vector<double> private_means;
    std::uint64_t trials = 0;
    std::uint64_t redraws = 0;  // rank-deficient CSIT realizations rejected
};

// Ergodic sum-rate estimate over cfg.trials realizations. Trial i draws its
// channel (and random common precoder) from RandomStream(cfg.seed, i); the
// same realizations are reused for every t in `ts`.
std::vector<SumRateEstimate> monte_carlo_sum_rate_curve(const ScenarioConfig& cfg, std::span<const double> ts,
                                                        const RunOptions& options = {});
SumRateEstimate monte_carlo_sum_rate(const ScenarioConfig& cfg, double t, const RunOptions& options = {});

// Draws one realization for trial `trial_index`, redrawing on rank deficiency.
struct Realization {
    ChannelState state;
    PrecoderSet precoders;
    std::uint64_t redraws = 0;
};
Realization draw_realization(const ScenarioConfig& cfg, double epsilon, std::uint64_t trial_index);

}  // namespace rsma
