#pragma once

#include "levy/models.hpp"

#include <array>
#include <complex>

namespace levy {

// Equispaced frequency grid. Symmetric grids (u_min = -u_max) with odd count
// contain u = 0 exactly and are the ones used for Fourier inversion.
struct FrequencyGrid {
    double u_min = 0.0;
    double u_max = 0.0;
    Eigen::Index count = 0;

    double spacing() const { return (u_max - u_min) / static_cast<double>(count - 1); }
    bool is_symmetric() const { return u_min == -u_max && count % 2 == 1; }
    Eigen::ArrayXd points() const;

    // Symmetric grid over [-u_max, u_max] with `half` positive points
    // (count = 2*half + 1), built so that u[j] and -u[j] match bit-exactly.
    static FrequencyGrid symmetric(double u_max, Eigen::Index half);

    void validate() const;
};

// Empirical characteristic function derivatives
//   psi_hat^(j)(u) = (1/n) sum_k (i Z_k)^j exp(i u Z_k),  j = 0..max_order,
// evaluated on a frequency grid.
struct CfDerivatives {
    FrequencyGrid grid;
    int max_order = 0;
    std::array<Eigen::ArrayXcd, 4> values; // filled for j <= max_order
    Eigen::Index sample_size = 0;
    double delta = 0.0;

    const Eigen::ArrayXcd& order(int j) const;
};

// First/second half of a 2n-sample, in order.
struct SplitSample {
    SampleIncrements first_half;
    SampleIncrements second_half;
};

CfDerivatives cf_derivatives(const SampleIncrements& sample, int max_order,
                             const FrequencyGrid& grid);

SplitSample split_halves(const SampleIncrements& sample);

} // namespace levy
