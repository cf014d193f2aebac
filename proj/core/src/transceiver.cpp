#include "rsma/transceiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rsma/errors.hpp"
#include "rsma/parallel.hpp"

namespace rsma {

namespace {

constexpr double kRankTolerance = 1e-12;
constexpr std::uint64_t kMaxRedraws = 1000;

using Svd = Eigen::JacobiSVD<Eigen::MatrixXcd>;

Svd thin_svd(const Eigen::MatrixXcd& csit) {
    if (csit.cols() < 1 || csit.rows() < csit.cols())
        throw DegenerateChannelError("csit must be n_t x K with n_t >= K >= 1");
    return Svd(csit, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

// pinv(csit^H) = U S^{-1} V^H for csit = U S V^H; columns normalized.
Eigen::MatrixXcd zf_from_svd(const Svd& svd) {
    const Eigen::VectorXd& s = svd.singularValues();
    const double largest = s.size() ? s(0) : 0.0;
    if (!(largest > 0.0) || s(s.size() - 1) < kRankTolerance * largest)
        throw DegenerateChannelError("CSIT matrix is rank deficient");
    Eigen::MatrixXcd p = svd.matrixU() * s.cwiseInverse().asDiagonal() * svd.matrixV().adjoint();
    for (Eigen::Index k = 0; k < p.cols(); ++k) p.col(k).normalize();
    return p;
}

Eigen::VectorXcd isotropic_unit_vector(Eigen::Index n, RandomStream& rng) {
    Eigen::VectorXcd v = sample_complex_gaussian_vector(n, rng);
    v.normalize();
    return v;
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

Eigen::MatrixXcd zf_precoders(const Eigen::MatrixXcd& csit) { return zf_from_svd(thin_svd(csit)); }

Eigen::VectorXcd common_precoder(const Eigen::MatrixXcd& csit, CommonPrecoderMode mode, RandomStream& rng) {
    if (mode == CommonPrecoderMode::random_isotropic) return isotropic_unit_vector(csit.rows(), rng);
    const Svd svd = thin_svd(csit);
    Eigen::VectorXcd u = svd.matrixU().col(0);
    u.normalize();
    return u;
}

PrecoderSet make_precoders(const Eigen::MatrixXcd& csit, CommonPrecoderMode mode, double t, RandomStream& rng) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("power split t must lie in (0, 1]");
    const Svd svd = thin_svd(csit);
    PrecoderSet out;
    out.privates = zf_from_svd(svd);
    if (mode == CommonPrecoderMode::random_isotropic) {
        out.common = isotropic_unit_vector(csit.rows(), rng);
    } else {
        out.common = svd.matrixU().col(0);
        out.common.normalize();
    }
    out.t = t;
    return out;
}

LinkGains link_gains(const ChannelState& state, const PrecoderSet& precoders) {
    const Eigen::MatrixXcd& h = state.truth();
    if (precoders.privates.rows() != h.rows() || precoders.privates.cols() != h.cols() ||
        precoders.common.size() != h.rows())
        throw DomainError("link_gains: precoder dimensions do not match the channel");
    LinkGains g;
    g.cross = (h.adjoint() * precoders.privates).cwiseAbs2();
    g.common = (h.adjoint() * precoders.common).cwiseAbs2();
    return g;
}

RateSample rates_from_gains(const LinkGains& gains, double t, double power) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("power split t must lie in (0, 1]");
    if (!(power > 0.0)) throw DomainError("transmit power must be > 0");
    const Eigen::Index k_users = gains.cross.rows();
    const double per_stream = power * t / static_cast<double>(k_users);
    const double common_power = power * (1.0 - t);

    RateSample r;
    r.private_rates.resize(static_cast<std::size_t>(k_users));
    double min_common_sinr = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < k_users; ++k) {
        double interference = 0.0;
        for (Eigen::Index j = 0; j < k_users; ++j)
            if (j != k) interference += gains.cross(k, j);
        const double own = gains.cross(k, k);
        const double private_sinr = per_stream * own / (1.0 + per_stream * interference);
        const double common_sinr = common_power * gains.common(k) / (1.0 + per_stream * (interference + own));
        min_common_sinr = std::min(min_common_sinr, common_sinr);
        r.private_rates[static_cast<std::size_t>(k)] = log2_1p(private_sinr);
        r.sum += r.private_rates[static_cast<std::size_t>(k)];
    }
    r.common_rate = log2_1p(min_common_sinr);
    r.sum += r.common_rate;
    return r;
}

RateSample instantaneous_rates(const ChannelState& state, const PrecoderSet& precoders, double power) {
    return rates_from_gains(link_gains(state, precoders), precoders.t, power);
}

Realization draw_realization(const ScenarioConfig& cfg, double epsilon, std::uint64_t trial_index) {
    RandomStream rng(cfg.seed, trial_index);
    for (std::uint64_t redraws = 0; redraws <= kMaxRedraws; ++redraws) {
        ChannelState state = draw_channel_pair(cfg.num_antennas, cfg.num_users, epsilon, rng);
        try {
            PrecoderSet p = make_precoders(state.csit(), cfg.common_precoder_mode, 1.0, rng);
            return {std::move(state), std::move(p), redraws};
        } catch (const DegenerateChannelError&) {
        }
    }
    throw DegenerateChannelError("too many rank-deficient channel realizations");
}

std::vector<SumRateEstimate> monte_carlo_sum_rate_curve(const ScenarioConfig& cfg, std::span<const double> ts,
                                                        const RunOptions& options) {
    cfg.validate();
    for (double t : ts)
        if (!(t > 0.0 && t <= 1.0)) throw DomainError("power split t must lie in (0, 1]");

    const double eps = cfg.epsilon();
    const double power = cfg.power();
    const std::size_t n_t = ts.size();
    const std::size_t k_users = static_cast<std::size_t>(cfg.num_users);
    // Per t: sum, sum of squares, common sum, K private sums.
    const std::size_t stride = 3 + k_users;

    struct Partial {
        std::vector<double> acc;
        std::uint64_t redraws = 0;
    };
    const std::size_t chunks = chunk_count(cfg.trials);
    std::vector<Partial> partials(chunks);

    for_each_chunk(chunks, options.threads, [&](std::size_t c) {
        Partial& part = partials[c];
        part.acc.assign(n_t * stride, 0.0);
        const std::uint64_t begin = c * kTrialChunk;
        const std::uint64_t end = std::min<std::uint64_t>(cfg.trials, begin + kTrialChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            const Realization real = draw_realization(cfg, eps, i);
            part.redraws += real.redraws;
            const LinkGains gains = link_gains(real.state, real.precoders);
            for (std::size_t ti = 0; ti < n_t; ++ti) {
                const RateSample r = rates_from_gains(gains, ts[ti], power);
                double* a = &part.acc[ti * stride];
                a[0] += r.sum;
                a[1] += r.sum * r.sum;
                a[2] += r.common_rate;
                for (std::size_t k = 0; k < k_users; ++k) a[3 + k] += r.private_rates[k];
            }
        }
    });

    std::vector<double> total(n_t * stride, 0.0);
    std::uint64_t redraws = 0;
    for (const Partial& part : partials) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += part.acc[i];
        redraws += part.redraws;
    }

    const double n = static_cast<double>(cfg.trials);
    std::vector<SumRateEstimate> out(n_t);
    for (std::size_t ti = 0; ti < n_t; ++ti) {
        const double* a = &total[ti * stride];
        SumRateEstimate& e = out[ti];
        e.t = ts[ti];
        e.trials = cfg.trials;
        e.redraws = redraws;
        e.mean = a[0] / n;
        if (cfg.trials > 1) {
            const double var = std::max(0.0, (a[1] - a[0] * a[0] / n) / (n - 1.0));
            e.half_width_95 = 1.96 * std::sqrt(var / n);
        }
        e.common_mean = a[2] / n;
        e.private_means.resize(k_users);
        for (std::size_t k = 0; k < k_users; ++k) e.private_means[k] = a[3 + k] / n;
    }
    return out;
}

SumRateEstimate monte_carlo_sum_rate(const ScenarioConfig& cfg, double t, const RunOptions& options) {
    const double ts[] = {t};
    return monte_carlo_sum_rate_curve(cfg, ts, options).front();
}

}  // namespace rsma
