#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rsma/channel.hpp"
#include "rsma/errors.hpp"
#include "rsma/scenario_json.hpp"

namespace {

double j0_series(double x) {
    long double term = 1.0L, sum = 1.0L;
    const long double q = static_cast<long double>(x) * x / 4.0L;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return static_cast<double>(sum);
}

double jakes_oracle(double kmh) {
    const double doppler = kmh / 3.6 * 3.5e9 / 299792458.0;
    return j0_series(2.0 * std::numbers::pi * doppler * 2.5e-3);
}

rsma::ScenarioConfig scenario(int n_t, int k, double eps) {
    rsma::ScenarioConfig cfg;
    cfg.num_antennas = n_t;
    cfg.num_users = k;
    cfg.epsilon_override = eps;
    return cfg;
}

template <class Fn>
void expect_config_error(const char* field, Fn&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected ConfigError for " << field;
    } catch (const rsma::ConfigError& e) {
        EXPECT_EQ(e.field(), field) << e.what();
    }
}

}  // namespace

TEST(TimeCorrelation, JakesValues) {
    EXPECT_EQ(rsma::time_correlation(0.0, 3.5e9, 2.5e-3), 1.0);
    EXPECT_NEAR(rsma::time_correlation(30.0, 3.5e9, 2.5e-3), jakes_oracle(30.0), 1e-12);
    EXPECT_NEAR(rsma::time_correlation(30.0, 3.5e9, 2.5e-3), 0.496028, 1e-6);
    EXPECT_NEAR(rsma::time_correlation(20.0, 3.5e9, 2.5e-3), jakes_oracle(20.0), 1e-12);
    EXPECT_NEAR(rsma::time_correlation(20.0, 3.5e9, 2.5e-3), 0.756862, 1e-6);
}

TEST(TimeCorrelation, RejectsBadArguments) {
    EXPECT_THROW(rsma::time_correlation(-1.0, 3.5e9, 2.5e-3), rsma::DomainError);
    EXPECT_THROW(rsma::time_correlation(10.0, 0.0, 2.5e-3), rsma::DomainError);
    EXPECT_THROW(rsma::time_correlation(10.0, 3.5e9, -1.0), rsma::DomainError);
    EXPECT_THROW(rsma::time_correlation(NAN, 3.5e9, 1.0), rsma::DomainError);
}

TEST(ScenarioConfig, EpsilonFromMobilityOrOverride) {
    rsma::ScenarioConfig cfg;
    cfg.speed_kmh = 30.0;
    EXPECT_NEAR(cfg.epsilon(), jakes_oracle(30.0), 1e-12);
    cfg.epsilon_override = 0.25;
    EXPECT_EQ(cfg.epsilon(), 0.25);
    cfg.snr_db = 20.0;
    EXPECT_NEAR(cfg.power(), 100.0, 1e-12);
}

TEST(ScenarioConfig, ValidationNamesTheField) {
    expect_config_error("K", [] { scenario(2, 4, 0.5).validate(); });
    expect_config_error("n_t", [] { scenario(0, 0, 0.5).validate(); });
    expect_config_error("epsilon_override", [] { scenario(4, 4, 1.5).validate(); });
    expect_config_error("trials", [] {
        auto c = scenario(4, 4, 0.5);
        c.trials = 0;
        c.validate();
    });
    expect_config_error("speed_kmh", [] {
        auto c = scenario(4, 4, 0.5);
        c.speed_kmh = -3;
        c.validate();
    });
    expect_config_error("delay_s", [] {
        auto c = scenario(4, 4, 0.5);
        c.delay_s = 0;
        c.validate();
    });
}

TEST(ScenarioJson, RoundTrip) {
    rsma::ScenarioConfig cfg = scenario(8, 4, 0.3);
    cfg.snr_db = 27.5;
    cfg.speed_kmh = 12.0;
    cfg.trials = 1234;
    cfg.seed = 0xdeadbeefcafeULL;
    cfg.common_precoder_mode = rsma::CommonPrecoderMode::random_isotropic;
    const rsma::ScenarioConfig back = rsma::scenario_from_json(rsma::scenario_to_json(cfg));
    EXPECT_EQ(back.num_antennas, 8);
    EXPECT_EQ(back.num_users, 4);
    EXPECT_EQ(back.snr_db, 27.5);
    EXPECT_EQ(back.speed_kmh, 12.0);
    EXPECT_EQ(back.epsilon_override, 0.3);
    EXPECT_EQ(back.trials, 1234u);
    EXPECT_EQ(back.seed, 0xdeadbeefcafeULL);
    EXPECT_EQ(back.common_precoder_mode, rsma::CommonPrecoderMode::random_isotropic);
}

TEST(ScenarioJson, RejectsUnknownMissingAndMistypedKeys) {
    using nlohmann::json;
    expect_config_error("colour", [] { rsma::scenario_from_json(json{{"n_t", 4}, {"K", 4}, {"snr_db", 20}, {"colour", 1}}); });
    expect_config_error("snr_db", [] { rsma::scenario_from_json(json{{"n_t", 4}, {"K", 4}}); });
    expect_config_error("K", [] { rsma::scenario_from_json(json{{"n_t", 4}, {"K", "four"}, {"snr_db", 20}}); });
    expect_config_error("K", [] { rsma::scenario_from_json(json{{"n_t", 4}, {"K", 2.5}, {"snr_db", 20}}); });
    expect_config_error("seed", [] { rsma::scenario_from_json(json{{"n_t", 4}, {"K", 4}, {"snr_db", 20}, {"seed", -1}}); });
    expect_config_error("common_precoder_mode", [] {
        rsma::scenario_from_json(json{{"n_t", 4}, {"K", 4}, {"snr_db", 20}, {"common_precoder_mode", "svd"}});
    });
    expect_config_error("K", [] { rsma::scenario_from_json(json{{"n_t", 2}, {"K", 4}, {"snr_db", 20}}); });
}

TEST(ScenarioJson, MissingFileIsIoError) {
    EXPECT_THROW(rsma::read_json_file("/nonexistent/dir/scenario.json"), rsma::IoError);
}

TEST(ChannelState, EvolutionIdentity) {
    rsma::RandomStream rng(11, 0);
    const auto st = rsma::draw_channel_pair(scenario(6, 3, 0.6), rng);
    const Eigen::MatrixXcd expect = 0.6 * st.csit() + std::sqrt(1.0 - 0.36) * st.innovation();
    EXPECT_LT((st.truth() - expect).norm(), 1e-14);
    EXPECT_EQ(st.num_antennas(), 6);
    EXPECT_EQ(st.num_users(), 3);
    EXPECT_THROW(rsma::ChannelState(st.csit(), st.innovation(), 1.2), rsma::DomainError);
    EXPECT_THROW(rsma::ChannelState(st.csit(), Eigen::MatrixXcd::Zero(2, 2), 0.5), rsma::DomainError);
}

TEST(ChannelState, PerfectCsitWhenEpsilonIsOne) {
    rsma::RandomStream rng(12, 0);
    const auto st = rsma::draw_channel_pair(scenario(4, 4, 1.0), rng);
    EXPECT_EQ(st.truth(), st.csit());
}

TEST(ChannelState, DeterministicPerSeedAndTrial) {
    rsma::RandomStream a(13, 77), b(13, 77);
    const auto sa = rsma::draw_channel_pair(scenario(4, 2, 0.4), a);
    const auto sb = rsma::draw_channel_pair(scenario(4, 2, 0.4), b);
    EXPECT_EQ(sa.truth(), sb.truth());
    EXPECT_EQ(sa.csit(), sb.csit());
}

TEST(ChannelState, IndependentWhenEpsilonIsZero) {
    constexpr int trials = 100000;
    std::complex<double> cross = 0.0;
    for (int i = 0; i < trials; ++i) {
        rsma::RandomStream rng(14, i);
        const auto st = rsma::draw_channel_pair(2, 1, 0.0, rng);
        cross += std::conj(st.truth()(0, 0)) * st.csit()(0, 0);
    }
    EXPECT_LT(std::abs(cross / double(trials)), 0.02);
}

TEST(ChannelState, StationaryAndCorrelated) {
    constexpr int trials = 100000;
    constexpr int n_t = 4;
    for (double eps : {0.0, 0.496, 0.9}) {
        double pow_truth = 0.0, pow_csit = 0.0, c = 0.0, c2 = 0.0;
        for (int i = 0; i < trials; ++i) {
            rsma::RandomStream rng(15, i);
            const auto st = rsma::draw_channel_pair(n_t, 1, eps, rng);
            pow_truth += st.truth().squaredNorm() / n_t;
            pow_csit += st.csit().squaredNorm() / n_t;
            const double r = (st.truth().col(0).adjoint() * st.csit().col(0))(0, 0).real() / n_t;
            c += r;
            c2 += r * r;
        }
        const double mean = c / trials;
        const double se = std::sqrt((c2 / trials - mean * mean) / trials);
        EXPECT_NEAR(pow_truth / trials, 1.0, 0.02) << eps;
        EXPECT_NEAR(pow_csit / trials, 1.0, 0.02) << eps;
        EXPECT_NEAR(mean, eps, 3.0 * se) << eps;
    }
}

TEST(CommonPrecoderMode, ParseAndPrint) {
    using rsma::CommonPrecoderMode;
    for (auto m : {CommonPrecoderMode::random_isotropic, CommonPrecoderMode::dominant_eigenvector})
        EXPECT_EQ(rsma::parse_common_precoder_mode(rsma::to_string(m)), m);
    EXPECT_THROW(rsma::parse_common_precoder_mode("leftmost"), rsma::ConfigError);
}
