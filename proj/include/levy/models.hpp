#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <variant>

namespace levy {

// --- jump size laws for compound Poisson parts -----------------------------

struct GaussianJump {
    double mean = 0.0;
    double sd = 1.0;
};

struct ExponentialJump {
    double rate = 1.0;
};

// Y = lo + (hi - lo) * Beta(a, b).
struct BetaRescaledJump {
    double a = 3.0;
    double b = 3.0;
    double lo = -4.0;
    double hi = 4.0;
};

using JumpLaw = std::variant<GaussianJump, ExponentialJump, BetaRescaledJump>;

// --- jump parts -------------------------------------------------------------

struct NoJumps {};

struct CompoundPoisson {
    double intensity = 0.5; // jumps per unit time
    JumpLaw law = GaussianJump{};
};

// Levy density beta * x^{-1} e^{-alpha x} on x > 0; Gamma(beta*t, alpha) marginals.
struct LevyGamma {
    double beta = 1.0;
    double alpha = 1.0;
};

// Difference of two independent Levy-Gamma processes.
struct BilateralGamma {
    double beta = 1.0;
    double alpha = 1.0;
    double beta2 = 1.0;
    double alpha2 = 1.0;
};

// Subordinator with Levy density beta * x^{delta-1/2} x^{-1} e^{-alpha x} on x > 0.
// delta = 1/2 recovers Levy-Gamma, delta = 0 the inverse Gaussian subordinator.
struct SubordinatorPower {
    double beta = 1.0;
    double alpha = 1.0;
    double delta = 0.5;
};

using Subordinator = std::variant<CompoundPoisson, LevyGamma, SubordinatorPower>;

// X_t = B_{Gamma_t} for an independent Brownian motion B.
struct SubordinatedBm {
    Subordinator subordinator = LevyGamma{};
};

using JumpPart = std::variant<NoJumps, CompoundPoisson, LevyGamma, BilateralGamma,
                              SubordinatorPower, SubordinatedBm>;

// --- model ------------------------------------------------------------------

struct ModelSpec {
    double drift_b0 = 0.0;
    double sigma = 0.0; // Gaussian volatility, >= 0
    JumpPart jumps = NoJumps{};

    // Throws std::invalid_argument on parameter violations.
    void validate() const;
};

// --- samples ----------------------------------------------------------------

// Ordered increments with their common sampling step.
struct SampleIncrements {
    Eigen::ArrayXd z;
    double delta = 0.0;

    Eigen::Index size() const { return z.size(); }
};

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

} // namespace levy
