#include "levy/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace levy {

namespace {

void validate_law(const JumpLaw& law) {
    std::visit([](const auto& l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, GaussianJump>) {
            if (!(l.sd > 0.0))
                throw std::invalid_argument("GaussianJump: sd must be > 0");
        } else if constexpr (std::is_same_v<T, ExponentialJump>) {
            if (!(l.rate > 0.0))
                throw std::invalid_argument("ExponentialJump: rate must be > 0");
        } else {
            if (!(l.a > 0.0) || !(l.b > 0.0))
                throw std::invalid_argument("BetaRescaledJump: a, b must be > 0");
            if (!(l.lo < l.hi))
                throw std::invalid_argument("BetaRescaledJump: lo must be < hi");
        }
    }, law);
}

bool law_is_nonnegative(const JumpLaw& law) {
    if (std::holds_alternative<ExponentialJump>(law))
        return true;
    if (const auto* b = std::get_if<BetaRescaledJump>(&law))
        return b->lo >= 0.0;
    return false;
}

void validate_jumps(const JumpPart& jumps) {
    std::visit([](const auto& j) {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, NoJumps>) {
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
            if (!(j.intensity > 0.0))
                throw std::invalid_argument("CompoundPoisson: intensity must be > 0");
            validate_law(j.law);
        } else if constexpr (std::is_same_v<T, LevyGamma>) {
            if (!(j.beta > 0.0) || !(j.alpha > 0.0))
                throw std::invalid_argument("LevyGamma: beta, alpha must be > 0");
        } else if constexpr (std::is_same_v<T, BilateralGamma>) {
            if (!(j.beta > 0.0) || !(j.alpha > 0.0) || !(j.beta2 > 0.0) || !(j.alpha2 > 0.0))
                throw std::invalid_argument("BilateralGamma: all parameters must be > 0");
        } else if constexpr (std::is_same_v<T, SubordinatorPower>) {
            if (!(j.beta > 0.0) || !(j.alpha > 0.0))
                throw std::invalid_argument("SubordinatorPower: beta, alpha must be > 0");
            if (!(j.delta > -0.5))
                throw std::invalid_argument("SubordinatorPower: delta must be > -1/2");
        } else if constexpr (std::is_same_v<T, SubordinatedBm>) {
            std::visit([](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                validate_jumps(JumpPart{s});
                if constexpr (std::is_same_v<S, CompoundPoisson>) {
                    if (!law_is_nonnegative(s.law))
                        throw std::invalid_argument(
                            "SubordinatedBm: subordinator jumps must be nonnegative");
                }
            }, j.subordinator);
        }
    }, jumps);
}

} // namespace

void ModelSpec::validate() const {
    if (!(sigma >= 0.0))
        throw std::invalid_argument("ModelSpec: sigma must be >= 0");
    if (!std::isfinite(drift_b0))
        throw std::invalid_argument("ModelSpec: drift must be finite");
    validate_jumps(jumps);
}

double sample_gamma_increment(double shape, double rate, StreamRng& rng) {
    return rng.gamma(shape, rate);
}

double sample_subordinated_bm_increment(double subordinator_increment, StreamRng& rng) {
    if (!(subordinator_increment >= 0.0))
        throw std::invalid_argument("subordinated increment: time change must be >= 0");
    if (subordinator_increment == 0.0)
        return 0.0;
    return std::sqrt(subordinator_increment) * rng.normal();
}

double sample_jump_law(const JumpLaw& law, StreamRng& rng) {
    return std::visit([&rng](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, GaussianJump>) {
            return l.mean + l.sd * rng.normal();
        } else if constexpr (std::is_same_v<T, ExponentialJump>) {
            return -std::log(rng.uniform()) / l.rate;
        } else {
            return l.lo + (l.hi - l.lo) * rng.beta(l.a, l.b);
        }
    }, law);
}

namespace {

double sample_subordinator_increment(const Subordinator& sub, double delta, StreamRng& rng) {
    return std::visit([&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CompoundPoisson>) {
            const long count = rng.poisson(s.intensity * delta);
            double total = 0.0;
            for (long i = 0; i < count; ++i)
                total += sample_jump_law(s.law, rng);
            return total;
        } else if constexpr (std::is_same_v<S, LevyGamma>) {
            return rng.gamma(s.beta * delta, s.alpha);
        } else {
            if (s.delta == 0.5)
                return rng.gamma(s.beta * delta, s.alpha);
            if (s.delta == 0.0) {
                // Inverse Gaussian marginals: match the Laplace exponent
                // 2 beta sqrt(pi) (sqrt(alpha+theta) - sqrt(alpha)) t.
                const double mu = s.beta * std::sqrt(M_PI / s.alpha) * delta;
                const double lambda = 2.0 * M_PI * s.beta * s.beta * delta * delta;
                return rng.inverse_gaussian(mu, lambda);
            }
            throw std::invalid_argument(
                "SubordinatorPower: exact increments only for delta in {0, 1/2}");
        }
    }, sub);
}

} // namespace

double sample_jump_increment(const JumpPart& jumps, double delta, StreamRng& rng) {
    return std::visit([&](const auto& j) -> double {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, NoJumps>) {
            return 0.0;
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
            const long count = rng.poisson(j.intensity * delta);
            double total = 0.0;
            for (long i = 0; i < count; ++i)
                total += sample_jump_law(j.law, rng);
            return total;
        } else if constexpr (std::is_same_v<T, LevyGamma>) {
            return rng.gamma(j.beta * delta, j.alpha);
        } else if constexpr (std::is_same_v<T, BilateralGamma>) {
            const double up = rng.gamma(j.beta * delta, j.alpha);
            const double down = rng.gamma(j.beta2 * delta, j.alpha2);
            return up - down;
        } else if constexpr (std::is_same_v<T, SubordinatorPower>) {
            return sample_subordinator_increment(Subordinator{j}, delta, rng);
        } else {
            const double g = sample_subordinator_increment(j.subordinator, delta, rng);
            return sample_subordinated_bm_increment(g, rng);
        }
    }, jumps);
}

SampleIncrements simulate_increments(const ModelSpec& model, Eigen::Index n,
                                     double delta, SeedSpec seed) {
    model.validate();
    if (n < 1)
        throw std::invalid_argument("simulate_increments: n must be >= 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("simulate_increments: delta must be > 0");

    StreamRng rng(seed.master_seed, seed.stream_id);
    SampleIncrements out;
    out.delta = delta;
    out.z.resize(n);
    const double drift = model.drift_b0 * delta;
    const double vol = model.sigma * std::sqrt(delta);
    for (Eigen::Index k = 0; k < n; ++k) {
        double z = drift;
        if (model.sigma > 0.0)
            z += vol * rng.normal();
        z += sample_jump_increment(model.jumps, delta, rng);
        out.z[k] = z;
    }
    return out;
}

} // namespace levy
