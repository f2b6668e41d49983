#include "levy/paramest.hpp"

#include "levy/reduce.hpp"

#include <cmath>
#include <stdexcept>

namespace levy {

double estimate_b(const SampleIncrements& sample) {
    if (sample.size() < 1)
        throw std::invalid_argument("estimate_b: empty sample");
    const double total = pairwise_sum(sample.z);
    return total / (static_cast<double>(sample.size()) * sample.delta);
}

double estimate_c_ell(const SampleIncrements& sample, int ell) {
    if (sample.size() < 1)
        throw std::invalid_argument("estimate_c_ell: empty sample");
    if (ell < 2)
        throw std::invalid_argument("estimate_c_ell: ell must be >= 2");
    const double total = pairwise_sum(sample.z.size(), [&](Eigen::Index i) {
        double w = sample.z[i];
        for (int p = 1; p < ell; ++p)
            w *= sample.z[i];
        return w;
    });
    return total / (static_cast<double>(sample.size()) * sample.delta);
}

double gaussian_abs_moment(double r) {
    if (!(r > 0.0))
        throw std::invalid_argument("gaussian_abs_moment: r must be > 0");
    return std::exp(0.5 * r * M_LN2 + std::lgamma(0.5 * (r + 1.0))) / std::sqrt(M_PI);
}

SigmaEstimate estimate_sigma_power_variation(const SampleIncrements& sample, double r) {
    if (sample.size() < 1)
        throw std::invalid_argument("estimate_sigma_power_variation: empty sample");
    if (!(r > 0.0) || r > 1.0)
        throw std::invalid_argument("estimate_sigma_power_variation: r must be in (0, 1]");
    const double mr = gaussian_abs_moment(r);
    // Delta^{r/2} in log space to stay away from underflow at small Delta.
    const double delta_pow = std::exp(0.5 * r * std::log(sample.delta));
    const double total = pairwise_sum(sample.z.size(), [&](Eigen::Index i) {
        return std::pow(std::abs(sample.z[i]), r);
    });
    SigmaEstimate out;
    out.r = r;
    out.sigma_r_power = total / (mr * static_cast<double>(sample.size()) * delta_pow);
    out.sigma = std::pow(out.sigma_r_power, 1.0 / r);
    out.asymptotically_biased = (r == 1.0);
    return out;
}

} // namespace levy
