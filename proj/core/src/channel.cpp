#include "rsma/channel.hpp"

#include <cmath>
#include <numbers>

#include "rsma/errors.hpp"
#include "rsma/special_functions.hpp"

namespace rsma {

std::string to_string(CommonPrecoderMode mode) {
    switch (mode) {
    case CommonPrecoderMode::random_isotropic: return "random_isotropic";
    case CommonPrecoderMode::dominant_eigenvector: return "dominant_eigenvector";
    }
    return "unknown";
}

CommonPrecoderMode parse_common_precoder_mode(std::string_view name) {
    if (name == "random_isotropic") return CommonPrecoderMode::random_isotropic;
    if (name == "dominant_eigenvector") return CommonPrecoderMode::dominant_eigenvector;
    throw ConfigError("common_precoder_mode",
                      "expected \"random_isotropic\" or \"dominant_eigenvector\", got \"" + std::string(name) + "\"");
}

double ScenarioConfig::power() const { return std::pow(10.0, snr_db / 10.0); }

double ScenarioConfig::epsilon() const {
    if (epsilon_override) return *epsilon_override;
    return time_correlation(speed_kmh, carrier_hz, delay_s);
}

void ScenarioConfig::validate() const {
    if (num_antennas < 1) throw ConfigError("n_t", "must be >= 1");
    if (num_users < 1) throw ConfigError("K", "must be >= 1");
    if (num_users > num_antennas) throw ConfigError("K", "must not exceed n_t");
    if (!std::isfinite(snr_db)) throw ConfigError("snr_db", "must be finite");
    if (!std::isfinite(speed_kmh) || speed_kmh < 0.0) throw ConfigError("speed_kmh", "must be finite and >= 0");
    if (!std::isfinite(carrier_hz) || carrier_hz <= 0.0) throw ConfigError("carrier_hz", "must be finite and > 0");
    if (!std::isfinite(delay_s) || delay_s <= 0.0) throw ConfigError("delay_s", "must be finite and > 0");
    if (epsilon_override && !(*epsilon_override >= 0.0 && *epsilon_override <= 1.0))
        throw ConfigError("epsilon_override", "must lie in [0, 1]");
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
}

double time_correlation(double speed_kmh, double carrier_hz, double delay_s) {
    if (!std::isfinite(speed_kmh) || !std::isfinite(carrier_hz) || !std::isfinite(delay_s))
        throw DomainError("time_correlation: arguments must be finite");
    if (speed_kmh < 0.0) throw DomainError("time_correlation: speed must be >= 0");
    if (carrier_hz <= 0.0 || delay_s <= 0.0)
        throw DomainError("time_correlation: carrier frequency and delay must be > 0");
    const double doppler_hz = (speed_kmh / 3.6) * carrier_hz / kSpeedOfLight;
    return bessel_j0(2.0 * std::numbers::pi * doppler_hz * delay_s);
}

ChannelState::ChannelState(Eigen::MatrixXcd csit, Eigen::MatrixXcd innovation, double epsilon)
    : csit_(std::move(csit)), innovation_(std::move(innovation)), epsilon_(epsilon) {
    if (csit_.rows() != innovation_.rows() || csit_.cols() != innovation_.cols())
        throw DomainError("ChannelState: csit and innovation dimensions differ");
    if (!(epsilon_ >= -1.0 && epsilon_ <= 1.0)) throw DomainError("ChannelState: epsilon must lie in [-1, 1]");
    const double spread = std::sqrt(1.0 - epsilon_ * epsilon_);
    truth_ = epsilon_ * csit_ + spread * innovation_;
}

ChannelState draw_channel_pair(const ScenarioConfig& cfg, RandomStream& rng) {
    cfg.validate();
    return draw_channel_pair(cfg.num_antennas, cfg.num_users, cfg.epsilon(), rng);
}

ChannelState draw_channel_pair(int num_antennas, int num_users, double epsilon, RandomStream& rng) {
    const Eigen::Index nt = num_antennas;
    const Eigen::Index k = num_users;
    Eigen::MatrixXcd csit(nt, k);
    Eigen::MatrixXcd innovation(nt, k);
    for (Eigen::Index c = 0; c < k; ++c) csit.col(c) = sample_complex_gaussian_vector(nt, rng);
    for (Eigen::Index c = 0; c < k; ++c) innovation.col(c) = sample_complex_gaussian_vector(nt, rng);
    return ChannelState(std::move(csit), std::move(innovation), epsilon);
}

}  // namespace rsma
