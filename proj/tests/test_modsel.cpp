#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "levy/modsel.hpp"
#include "levy/rng.hpp"

#include <cmath>

using namespace levy;

namespace {

SampleIncrements make_sample(std::initializer_list<double> zs, double delta = 1.0) {
    SampleIncrements s;
    s.delta = delta;
    s.z.resize(static_cast<Eigen::Index>(zs.size()));
    Eigen::Index i = 0;
    for (double z : zs)
        s.z[i++] = z;
    return s;
}

} // namespace

TEST_CASE("default cutoff grid is 100 values over (0, 10]") {
    const auto grid = CutoffGrid::equispaced();
    REQUIRE(grid.values.size() == 100);
    CHECK(grid.values[0] == doctest::Approx(0.1));
    CHECK(grid.values[99] == doctest::Approx(10.0));
    CHECK(grid.values[0] > 0.0);
}

TEST_CASE("capping keeps at least one cutoff") {
    const auto grid = CutoffGrid::equispaced();
    CHECK(grid.capped(3.25).values.size() == 32);
    CHECK(grid.capped(0.01).values.size() == 1);
    CHECK(grid.capped(100.0).values.size() == 100);
}

TEST_CASE("penalty_h_hat hand values") {
    SplitSample sp;
    sp.first_half = make_sample({1.0});
    sp.second_half = make_sample({1.0});
    CHECK(penalty_h_hat(sp, 1.0, 2.0) == doctest::Approx(4.0)); // 2 (1*1 + 1)
    CHECK(penalty_h_hat(sp, 1.0, 4.0) == doctest::Approx(2.0 * penalty_h_hat(sp, 1.0, 2.0)));

    sp.first_half = make_sample({0.0, 0.0});
    sp.second_half = make_sample({0.0, 0.0});
    CHECK(penalty_h_hat(sp, 4.0, 3.0) == 0.0);
}

TEST_CASE("penalty_h_bar hand values") {
    // full sample of size 2 plays the 2n role, so n = 1
    const auto s = make_sample({1.0, 1.0}, 0.5);
    // kappa' m / (n Delta^2) * (1/(2n)) sum Z^4 = 1 * 2 / (1 * 0.25) * 1 = 8
    CHECK(penalty_h_bar(s, 1.0, 2.0) == doctest::Approx(8.0));
    CHECK(penalty_h_bar(s, 1.0, 4.0) == doctest::Approx(16.0));
    const auto zeros = make_sample({0.0, 0.0});
    CHECK(penalty_h_bar(zeros, 3.0, 5.0) == 0.0);
}

TEST_CASE("penalty_p_bar hand values") {
    const auto s = make_sample({2.0}, 1.0); // n = 1
    // kappa' m/(n Delta^2) (1/n) sum Z^6 = kappa' m 64
    CHECK(penalty_p_bar(s, 1.0, 1.0) == doctest::Approx(64.0));
    CHECK(penalty_p_bar(s, 3.0, 2.0) == doctest::Approx(3.0 * 2.0 * 64.0));
    const auto zeros = make_sample({0.0, 0.0, 0.0});
    CHECK(penalty_p_bar(zeros, 3.0, 5.0) == 0.0);
}

TEST_CASE("penalty_g_bar hand values") {
    const auto s = make_sample({3.0}, 1.0);
    CHECK(penalty_g_bar(s, 1.0, 1.0) == doctest::Approx(9.0));
    CHECK(penalty_g_bar(s, 7.5, 2.0) == doctest::Approx(7.5 * 2.0 * 9.0));
}

TEST_CASE("selection basics") {
    const auto grid = CutoffGrid::equispaced(5.0, 10);
    Eigen::ArrayXd norms = Eigen::ArrayXd::Constant(10, 2.0);
    Eigen::ArrayXd pens(10);
    for (int i = 0; i < 10; ++i)
        pens[i] = 0.3 * grid.values[i];

    // constant norms: penalty strictly increasing, so the smallest m wins
    auto diag = select_cutoff(norms, pens, grid);
    CHECK(diag.chosen_index == 0);
    CHECK(diag.chosen_m == grid.values[0]);

    // norms equal penalties: criterion identically zero, tie broken to smallest m
    diag = select_cutoff(pens, pens, grid);
    CHECK(diag.chosen_index == 0);

    // criterion bookkeeping
    diag = select_cutoff(norms, pens, grid);
    for (int i = 0; i < 10; ++i)
        CHECK(diag.criterion[i] == doctest::Approx(-norms[i] + pens[i]).epsilon(1e-12));

    CHECK_THROWS_AS(select_cutoff(norms.head(5), pens, grid), std::invalid_argument);
}

TEST_CASE("chosen m reproduces brute force and is monotone in kappa") {
    StreamRng rng(404, 0);
    const auto grid = CutoffGrid::equispaced(10.0, 100);
    for (int trial = 0; trial < 50; ++trial) {
        // random nondecreasing norm sequence, random base penalty linear in m
        Eigen::ArrayXd norms(100);
        double acc = 0.0;
        for (int i = 0; i < 100; ++i) {
            acc += rng.uniform();
            norms[i] = acc;
        }
        const double base = 0.5 + rng.uniform();
        Eigen::ArrayXd pen1(100), pen2(100);
        for (int i = 0; i < 100; ++i) {
            pen1[i] = base * grid.values[i];
            pen2[i] = 2.0 * base * grid.values[i];
        }
        const auto d1 = select_cutoff(norms, pen1, grid);
        const auto d2 = select_cutoff(norms, pen2, grid);

        // brute force over the grid
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < 100; ++i)
            if (-norms[i] + pen1[i] < -norms[best] + pen1[best])
                best = i;
        CHECK(d1.chosen_index == best);

        // doubling kappa never increases the chosen m
        CHECK(d2.chosen_m <= d1.chosen_m);
    }
}
