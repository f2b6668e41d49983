#pragma once

#include <array>
#include <cstdint>

namespace levy {

// Counter-based generator (Philox4x32-10). A (master_seed, stream_id) pair
// selects a statistically independent stream; draws are a pure function of
// (key, counter), so replications can run in parallel and reproduce exactly.
class StreamRng {
public:
    StreamRng(std::uint64_t master_seed, std::uint64_t stream_id) noexcept
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_lo_(static_cast<std::uint32_t>(stream_id)),
          stream_hi_(static_cast<std::uint32_t>(stream_id >> 32)) {}

    std::uint64_t next_u64() noexcept;

    // Uniform on (0,1]; never returns 0, so log() is always finite.
    double uniform() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }
    // Uniform on [0,1).
    double uniform_co() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double normal() noexcept;

    // Gamma(shape, rate); valid for arbitrarily small shapes.
    double gamma(double shape, double rate);

    // Inverse Gaussian(mu, lambda) via the squared-normal two-root transform.
    double inverse_gaussian(double mu, double lambda);

    long poisson(double mean);

    // Beta(a, b) as a two-Gamma ratio.
    double beta(double a, double b);

private:
    std::array<std::uint32_t, 4> block(std::uint64_t counter) const noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int buf_pos_ = 2;
    double normal_spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace levy
