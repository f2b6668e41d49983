#pragma once

#include "levy/models.hpp"

namespace levy {

// b_hat = (1/(n Delta)) sum Z_k.
double estimate_b(const SampleIncrements& sample);

// c_hat_l = (1/(n Delta)) sum Z_k^l (signed powers), l >= 2.
double estimate_c_ell(const SampleIncrements& sample, int ell);

// m_r = E|X|^r for standard Gaussian X: 2^{r/2} Gamma((r+1)/2) / sqrt(pi).
double gaussian_abs_moment(double r);

struct SigmaEstimate {
    double sigma_r_power = 0.0; // hat sigma_n^(r), estimates sigma^r
    double sigma = 0.0;         // hat sigma(r) = (hat sigma_n^(r))^{1/r}
    double r = 0.0;
    bool asymptotically_biased = false; // set at r = 1
};

// Power variation estimator, r in (0, 1].
SigmaEstimate estimate_sigma_power_variation(const SampleIncrements& sample, double r);

} // namespace levy
