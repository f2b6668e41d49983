#include "levy/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace levy {

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b,
                    std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

} // namespace

std::array<std::uint32_t, 4> StreamRng::block(std::uint64_t counter) const noexcept {
    std::array<std::uint32_t, 4> c{static_cast<std::uint32_t>(counter),
                                   static_cast<std::uint32_t>(counter >> 32),
                                   stream_lo_, stream_hi_};
    std::uint32_t k0 = key_[0], k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return c;
}

std::uint64_t StreamRng::next_u64() noexcept {
    if (buf_pos_ == 2) {
        const auto c = block(counter_++);
        buf_[0] = (static_cast<std::uint64_t>(c[1]) << 32) | c[0];
        buf_[1] = (static_cast<std::uint64_t>(c[3]) << 32) | c[2];
        buf_pos_ = 0;
    }
    return buf_[buf_pos_++];
}

double StreamRng::normal() noexcept {
    if (have_spare_) {
        have_spare_ = false;
        return normal_spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform_co();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    normal_spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

double StreamRng::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("gamma: shape and rate must be positive");
    // Boosted draw for shape < 1: G(a) = G(a+1) * U^{1/a}.
    double boost = 1.0;
    double a = shape;
    if (a < 1.0) {
        boost = std::pow(uniform(), 1.0 / a);
        a += 1.0;
    }
    // Marsaglia-Tsang squeeze for shape >= 1.
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2)
            return boost * d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return boost * d * v / rate;
    }
}

double StreamRng::inverse_gaussian(double mu, double lambda) {
    if (!(mu > 0.0) || !(lambda > 0.0))
        throw std::invalid_argument("inverse_gaussian: parameters must be positive");
    const double n = normal();
    const double w = mu * n * n;
    // Smaller root of the IG quadratic, written without cancellation.
    double x = mu;
    if (w > 0.0) {
        const double s = std::sqrt(w * (4.0 * lambda + w));
        x = mu * (1.0 - 2.0 * w / (w + s));
    }
    if (uniform() <= mu / (mu + x))
        return x;
    return mu * mu / x;
}

long StreamRng::poisson(double mean) {
    if (mean < 0.0)
        throw std::invalid_argument("poisson: mean must be nonnegative");
    if (mean == 0.0)
        return 0;
    if (mean > 500.0) // keep exp(-mean) away from underflow
        return poisson(0.5 * mean) + poisson(0.5 * mean);
    double p = std::exp(-mean);
    double s = p;
    const double u = uniform_co();
    long k = 0;
    const long cap = static_cast<long>(mean + 40.0 * std::sqrt(mean) + 50.0);
    while (u > s && k < cap) {
        ++k;
        p *= mean / static_cast<double>(k);
        s += p;
    }
    return k;
}

double StreamRng::beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
}

} // namespace levy
