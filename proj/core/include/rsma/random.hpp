#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

namespace rsma {

// Counter-based random stream (Philox4x32-10). The key is the 64-bit master
// seed; the 128-bit counter is (block index, stream index), so stream i
// produces the same sequence no matter which thread or in which order it is
// consumed. Monte Carlo trial i always uses stream_index = i.
class RandomStream {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept;

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_; }

    std::uint32_t next_u32() noexcept;
    std::uint64_t next_u64() noexcept;

    // Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept;

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double standard_normal() noexcept;

    // Raw Philox4x32 bijection with 10 rounds.
    static Block philox(Block counter, Key key) noexcept;

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    Block buffer_{};
    unsigned pos_ = 4;
    std::optional<double> spare_normal_;
};

// n i.i.d. CN(0,1) entries: real and imaginary parts each N(0, 1/2).
Eigen::VectorXcd sample_complex_gaussian_vector(Eigen::Index n, RandomStream& rng);

// One draw from Gamma(shape, scale) (density x^{D-1} e^{-x/theta} / (Gamma(D) theta^D)),
// Marsaglia-Tsang squeeze method. Throws DomainError for non-positive parameters.
double sample_gamma(double shape, double scale, RandomStream& rng);

}  // namespace rsma
