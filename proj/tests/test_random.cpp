#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rsma/errors.hpp"
#include "rsma/random.hpp"

using rsma::RandomStream;

namespace {

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

template <class Draw>
Moments moments(int n, Draw&& draw) {
    double s = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = draw();
        s += v;
        ss += v * v;
    }
    const double mean = s / n;
    return {mean, (ss - n * mean * mean) / (n - 1)};
}

}  // namespace

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
TEST(Philox, KnownAnswers) {
    using B = RandomStream::Block;
    using K = RandomStream::Key;
    EXPECT_EQ(RandomStream::philox(B{0, 0, 0, 0}, K{0, 0}),
              (B{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(RandomStream::philox(B{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}),
              (B{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(RandomStream::philox(B{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}),
              (B{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(RandomStream, SameSeedAndIndexReproduce) {
    RandomStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
    RandomStream c(42, 7), d(42, 7);
    for (int i = 0; i < 101; ++i) ASSERT_EQ(c.standard_normal(), d.standard_normal());
}

TEST(RandomStream, StreamsDiffer) {
    RandomStream a(42, 0), b(42, 1), c(43, 0);
    int equal_ab = 0, equal_ac = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u32();
        equal_ab += x == b.next_u32();
        equal_ac += x == c.next_u32();
    }
    EXPECT_LE(equal_ab, 1);
    EXPECT_LE(equal_ac, 1);
}

TEST(RandomStream, AdjacentStreamsUncorrelated) {
    constexpr int n = 100000;
    double sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        RandomStream a(9, 2 * i), b(9, 2 * i + 1);
        sxy += a.standard_normal() * b.standard_normal();
    }
    EXPECT_LT(std::abs(sxy / n), 4.0 / std::sqrt(n));
}

TEST(RandomStream, UniformOpenInterval) {
    RandomStream rng(1, 0);
    const Moments m = moments(200000, [&] {
        const double u = rng.uniform();
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
        return u;
    });
    EXPECT_NEAR(m.mean, 0.5, 0.005);
    EXPECT_NEAR(m.var, 1.0 / 12.0, 0.002);
}

TEST(RandomStream, StandardNormalMoments) {
    RandomStream rng(2, 0);
    const Moments m = moments(200000, [&] { return rng.standard_normal(); });
    EXPECT_NEAR(m.mean, 0.0, 0.01);
    EXPECT_NEAR(m.var, 1.0, 0.015);
}

TEST(ComplexGaussian, UnitVarianceZeroMean) {
    RandomStream rng(3, 0);
    constexpr int draws = 100000;
    double re = 0.0, im = 0.0, pow = 0.0, re2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const Eigen::VectorXcd v = rsma::sample_complex_gaussian_vector(1, rng);
        re += v[0].real();
        im += v[0].imag();
        re2 += v[0].real() * v[0].real();
        pow += std::norm(v[0]);
    }
    EXPECT_NEAR(pow / draws, 1.0, 0.02);
    EXPECT_NEAR(re2 / draws, 0.5, 0.01);
    EXPECT_NEAR(re / draws, 0.0, 0.02);
    EXPECT_NEAR(im / draws, 0.0, 0.02);
}

TEST(ComplexGaussian, Reproducible) {
    RandomStream a(5, 9), b(5, 9);
    EXPECT_EQ(rsma::sample_complex_gaussian_vector(6, a), rsma::sample_complex_gaussian_vector(6, b));
    EXPECT_THROW(rsma::sample_complex_gaussian_vector(0, a), rsma::DomainError);
}

TEST(Gamma, ShapeFourMoments) {
    RandomStream rng(4, 0);
    const Moments m = moments(100000, [&] { return rsma::sample_gamma(4.0, 1.0, rng); });
    EXPECT_NEAR(m.mean, 4.0, 0.1);
    EXPECT_NEAR(m.var, 4.0, 0.3);
}

TEST(Gamma, SmallShapeAndScale) {
    RandomStream rng(6, 0);
    const Moments m = moments(100000, [&] { return rsma::sample_gamma(0.4, 2.5, rng); });
    EXPECT_NEAR(m.mean, 1.0, 0.03);
    EXPECT_NEAR(m.var, 2.5, 0.15);
}

TEST(Gamma, ExponentialCaseKolmogorovSmirnov) {
    RandomStream rng(7, 0);
    std::vector<double> x(100000);
    for (double& v : x) v = rsma::sample_gamma(1.0, 1.0, rng);
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = -std::expm1(-x[i]);
        ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
    }
    EXPECT_LT(ks, 0.01);
}

TEST(Gamma, PureFunctionOfStreamState) {
    RandomStream a(8, 3), b(8, 3);
    for (int i = 0; i < 100; ++i) ASSERT_EQ(rsma::sample_gamma(2.7, 0.3, a), rsma::sample_gamma(2.7, 0.3, b));
}

TEST(Gamma, RejectsBadParameters) {
    RandomStream rng(0, 0);
    EXPECT_THROW(rsma::sample_gamma(0.0, 1.0, rng), rsma::DomainError);
    EXPECT_THROW(rsma::sample_gamma(1.0, -1.0, rng), rsma::DomainError);
    EXPECT_THROW(rsma::sample_gamma(std::nan(""), 1.0, rng), rsma::DomainError);
}
