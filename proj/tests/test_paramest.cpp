#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levy/oracles.hpp"
#include "levy/paramest.hpp"
#include "levy/rng.hpp"
#include "levy/simulate.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace levy;

namespace {

SampleIncrements constant_sample(Eigen::Index n, double value, double delta) {
    SampleIncrements s;
    s.delta = delta;
    s.z = Eigen::ArrayXd::Constant(n, value);
    return s;
}

} // namespace

TEST_CASE("estimate_b on constant increments and linearity") {
    const auto s = constant_sample(7, 0.3 * 0.05, 0.05);
    CHECK(estimate_b(s) == doctest::Approx(0.3).epsilon(1e-14));

    StreamRng rng(3, 0);
    SampleIncrements r;
    r.delta = 0.1;
    r.z.resize(100);
    for (int i = 0; i < 100; ++i)
        r.z[i] = rng.normal();
    SampleIncrements scaled = r;
    scaled.z *= 2.5;
    CHECK(estimate_b(scaled) == doctest::Approx(2.5 * estimate_b(r)).epsilon(1e-13));

    SampleIncrements empty;
    empty.delta = 1.0;
    CHECK_THROWS_AS(estimate_b(empty), std::invalid_argument);
}

TEST_CASE("estimate_c_ell basics") {
    const auto zeros = constant_sample(5, 0.0, 0.2);
    CHECK(estimate_c_ell(zeros, 2) == 0.0);
    CHECK(estimate_c_ell(zeros, 3) == 0.0);
    CHECK_THROWS_AS(estimate_c_ell(zeros, 1), std::invalid_argument);
}

TEST_CASE("c2 on pure brownian recovers sigma^2") {
    ModelSpec m;
    m.sigma = 1.0;
    const int reps = 40;
    double total = 0.0;
    std::vector<double> values;
    for (int k = 0; k < reps; ++k) {
        const auto s = simulate_increments(m, 20000, 0.01, SeedSpec{700, (unsigned)k});
        values.push_back(estimate_c_ell(s, 2));
        total += values.back();
    }
    const double mean = total / reps;
    double var = 0.0;
    for (double v : values)
        var += (v - mean) * (v - mean);
    var /= (reps - 1);
    CHECK(std::abs(mean - 1.0) < 3.0 * std::sqrt(var / reps));
}

TEST_CASE("c3 on levy gamma approaches 2") {
    ModelSpec m;
    m.jumps = LevyGamma{1.0, 1.0};
    const auto s = simulate_increments(m, 100000, 0.01, SeedSpec{701, 0});
    const double c3 = estimate_c_ell(s, 3);
    // CLT band: Var(c3_hat) ~ c6 / (n Delta)
    const double c6 = true_moments(m).c6;
    const double se = std::sqrt(c6 / (100000 * 0.01));
    CHECK(std::abs(c3 - 2.0) < 3.0 * se);
}

TEST_CASE("gaussian absolute moments") {
    CHECK(gaussian_abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gaussian_abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(gaussian_abs_moment(1.0) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));

    // cross-check against quadrature of |x|^r phi(x); the substitution x = t^4
    // removes the cusp at the origin so the trapezoid oracle converges fast
    for (double r : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        const double quad = 2.0 * testutil::trapezoid(
                                      [r](double t) {
                                          const double x = t * t * t * t;
                                          return 4.0 * std::pow(t, 4.0 * r + 3.0) *
                                                 std::exp(-0.5 * x * x) /
                                                 std::sqrt(2.0 * M_PI);
                                      },
                                      0.0, std::pow(12.0, 0.25), 200000);
        CHECK(gaussian_abs_moment(r) == doctest::Approx(quad).epsilon(1e-9));
    }
    CHECK_THROWS_AS(gaussian_abs_moment(0.0), std::invalid_argument);
}

TEST_CASE("power variation plug-in identity") {
    const double delta = 0.04;
    const auto s = constant_sample(50, std::sqrt(delta), delta);
    for (double r : {0.25, 0.5, 1.0}) {
        const auto est = estimate_sigma_power_variation(s, r);
        CHECK(est.sigma_r_power == doctest::Approx(1.0 / gaussian_abs_moment(r)));
    }
    CHECK_THROWS_AS(estimate_sigma_power_variation(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_sigma_power_variation(s, 1.5), std::invalid_argument);
    CHECK(estimate_sigma_power_variation(s, 1.0).asymptotically_biased);
    CHECK(!estimate_sigma_power_variation(s, 0.5).asymptotically_biased);
}

TEST_CASE("pure brownian: sigma_hat(1/2) near 1 within the CLT band") {
    ModelSpec m;
    m.sigma = 1.0;
    const Eigen::Index n = 100000;
    const auto s = simulate_increments(m, n, 0.001, SeedSpec{702, 0});
    const auto est = estimate_sigma_power_variation(s, 0.5);
    const double m_half = gaussian_abs_moment(0.5);
    const double m_one = gaussian_abs_moment(1.0);
    // Var sigma_hat(r) = sigma^2 (m_2r/m_r^2 - 1) / (r^2 n)
    const double band =
        3.0 * std::sqrt((m_one / (m_half * m_half) - 1.0) / (0.25 * double(n)));
    CHECK(std::abs(est.sigma - 1.0) < band);
}

TEST_CASE("zero-frequency identities against the spectral estimates") {
    // covered in depth in test_spectral; here a direct numeric check of the
    // shared pairwise reduction, via b_hat = g_bar*(0) on a tiny sample
    SampleIncrements s;
    s.delta = 0.5;
    s.z.resize(3);
    s.z << 0.1, -0.2, 0.4;
    CHECK(estimate_b(s) == doctest::Approx((0.1 - 0.2 + 0.4) / (3 * 0.5)).epsilon(1e-15));
}
