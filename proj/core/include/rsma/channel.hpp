#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "rsma/random.hpp"

namespace rsma {

inline constexpr double kSpeedOfLight = 299'792'458.0;

enum class CommonPrecoderMode { random_isotropic, dominant_eigenvector };

std::string to_string(CommonPrecoderMode mode);
CommonPrecoderMode parse_common_precoder_mode(std::string_view name);

// Static experiment parameters. Noise variance is fixed to 1, so the total
// transmit power is P = 10^(snr_db/10).
struct ScenarioConfig {
    int num_antennas = 4;  // n_t
    int num_users = 4;     // K
    double snr_db = 20.0;
    double speed_kmh = 0.0;
    double carrier_hz = 3.5e9;
    double delay_s = 2.5e-3;
    std::optional<double> epsilon_override;
    CommonPrecoderMode common_precoder_mode = CommonPrecoderMode::dominant_eigenvector;
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 0;

    double power() const;
    // epsilon_override if set, otherwise the Jakes correlation of the mobility parameters.
    double epsilon() const;
    // Throws ConfigError naming the first violated field.
    void validate() const;
};

// Jakes temporal correlation J0(2 pi f_D T) with f_D = v f_c / c; speed in km/h.
double time_correlation(double speed_kmh, double carrier_hz, double delay_s);

// One realization of the delayed-CSIT channel pair. `truth` is formed from
// `csit` and `innovation` at construction, so the evolution identity holds
// by construction and the object is immutable afterwards.
class ChannelState {
public:
    ChannelState(Eigen::MatrixXcd csit, Eigen::MatrixXcd innovation, double epsilon);

    const Eigen::MatrixXcd& csit() const noexcept { return csit_; }
    const Eigen::MatrixXcd& truth() const noexcept { return truth_; }
    const Eigen::MatrixXcd& innovation() const noexcept { return innovation_; }
    double epsilon() const noexcept { return epsilon_; }

    Eigen::Index num_antennas() const noexcept { return csit_.rows(); }
    Eigen::Index num_users() const noexcept { return csit_.cols(); }

private:
    Eigen::MatrixXcd csit_;
    Eigen::MatrixXcd innovation_;
    Eigen::MatrixXcd truth_;
    double epsilon_;
};

// csit columns i.i.d. CN(0, I), then innovations, both drawn column by column
// from `rng`; truth_k = eps csit_k + sqrt(1 - eps^2) e_k.
ChannelState draw_channel_pair(const ScenarioConfig& cfg, RandomStream& rng);
ChannelState draw_channel_pair(int num_antennas, int num_users, double epsilon, RandomStream& rng);

}  // namespace rsma
