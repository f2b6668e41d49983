#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levy/rng.hpp"
#include "test_util.hpp"

#include <cmath>
#include <set>

using levy::StreamRng;

TEST_CASE("streams are reproducible and distinct") {
    StreamRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    for (int i = 0; i < 1000; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        CHECK(va != c.next_u64()); // collisions would be astronomically unlikely
        CHECK(va != d.next_u64());
    }
}

TEST_CASE("uniform draws fill (0,1] and pass a crude moment check") {
    StreamRng rng(7, 0);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        s += u;
        s2 += u * u;
    }
    CHECK(std::abs(s / n - 0.5) < 0.005);
    CHECK(std::abs(s2 / n - 1.0 / 3.0) < 0.005);
}

TEST_CASE("stream independence: cross-correlation below 0.01") {
    const int n = 100000;
    Eigen::ArrayXd x(n), y(n);
    StreamRng a(2024, 0), b(2024, 1);
    for (int i = 0; i < n; ++i) {
        x[i] = a.normal();
        y[i] = b.normal();
    }
    CHECK(std::abs(testutil::correlation(x, y)) < 0.01);
}

TEST_CASE("normal moments") {
    StreamRng rng(11, 3);
    const int n = 1000000;
    double s = 0.0, s2 = 0.0, s4 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
        s4 += z * z * z * z;
    }
    CHECK(std::abs(s / n) < 4.0 / std::sqrt(double(n)));
    CHECK(std::abs(s2 / n - 1.0) < 0.01);
    CHECK(std::abs(s4 / n - 3.0) < 0.05);
}

TEST_CASE("gamma mean identity at tiny shape") {
    // shape = beta * delta with beta = 1, delta = 0.05
    StreamRng rng(5, 1);
    const int n = 1000000;
    const double shape = 0.05, rate = 1.0;
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        s += rng.gamma(shape, rate);
    CHECK(s / n == doctest::Approx(shape / rate).epsilon(0.01));
}

TEST_CASE("gamma variance identity at moderate shape") {
    StreamRng rng(5, 2);
    const int n = 1000000;
    const double shape = 5.0, rate = 1.0;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gamma(shape, rate);
        s += g;
        s2 += g * g;
    }
    const double var = s2 / n - (s / n) * (s / n);
    CHECK(var == doctest::Approx(shape / (rate * rate)).epsilon(0.02));
}

TEST_CASE("gamma rate is a pure scale") {
    const int n = 10000;
    Eigen::ArrayXd a(n), b(n);
    StreamRng r1(77, 0), r2(77, 1);
    const double alpha = 2.0, alpha_prime = 5.0;
    for (int i = 0; i < n; ++i) {
        a[i] = r1.gamma(0.4, alpha) / (alpha_prime / alpha);
        b[i] = r2.gamma(0.4, alpha_prime);
    }
    CHECK(testutil::two_sample_ks_pvalue(a, b) > 0.01);
}

TEST_CASE("poisson mean and zero probability") {
    StreamRng rng(9, 0);
    const int n = 400000;
    const double mean = 0.025; // c * delta at the coarse design
    long total = 0, zeros = 0;
    for (int i = 0; i < n; ++i) {
        const long k = rng.poisson(mean);
        total += k;
        if (k == 0)
            ++zeros;
    }
    CHECK(std::abs(double(total) / n - mean) < 0.002);
    CHECK(std::abs(double(zeros) / n - std::exp(-mean)) < 0.002);
}

TEST_CASE("inverse gaussian matches its first two moments") {
    StreamRng rng(33, 0);
    const double mu = 0.8, lambda = 2.5;
    const int n = 1000000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.inverse_gaussian(mu, lambda);
        REQUIRE(x > 0.0);
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    const double var = s2 / n - m * m;
    CHECK(m == doctest::Approx(mu).epsilon(0.005));
    CHECK(var == doctest::Approx(mu * mu * mu / lambda).epsilon(0.02));
}

TEST_CASE("beta moments") {
    StreamRng rng(13, 0);
    const double a = 3.0, b = 3.0;
    const int n = 500000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.beta(a, b);
        s += x;
        s2 += x * x;
    }
    const double m = s / n;
    const double var = s2 / n - m * m;
    CHECK(m == doctest::Approx(a / (a + b)).epsilon(0.005));
    CHECK(var == doctest::Approx(a * b / ((a + b) * (a + b) * (a + b + 1))).epsilon(0.02));
}
