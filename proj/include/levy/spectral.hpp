#pragma once

#include "levy/ecf.hpp"

namespace levy {

// Estimation targets: g(x) = x n(x), h(x) = x^2 n(x), p(x) = x^3 n(x).
// H_HAT is the two-subsample estimator of h, H_BAR the single-sample one.
enum class Target { G, H_HAT, H_BAR, P_BAR };

// Power of x multiplying the Levy density for this target.
int target_power(Target t);
const char* target_name(Target t);

// A Fourier-domain estimate f*(u) on a frequency grid.
struct SpectralEstimate {
    FrequencyGrid grid;
    Eigen::ArrayXcd values;
    Target target = Target::H_BAR;
    double delta = 0.0;
    Eigen::Index sample_size = 0; // per half for H_HAT, full otherwise
};

struct StateGrid {
    double x_min = -10.0;
    double x_max = 10.0;
    Eigen::Index count = 500;

    double spacing() const { return (x_max - x_min) / static_cast<double>(count - 1); }
    Eigen::ArrayXd points() const;
    void validate() const;
};

enum class Method { SINC_SUM, QUADRATURE };

// A state-space estimate f_m(x) on a grid, with its cutoff.
struct DensityEstimate {
    StateGrid x_grid;
    Eigen::ArrayXd values;
    double cutoff_m = 0.0;
    Target target = Target::H_BAR;
    Method method = Method::QUADRATURE;
};

// sin(pi t) / (pi t) with sinc(0) = 1.
double sinc(double t);

// Spectral estimators built from empirical CF derivatives.
SpectralEstimate g_bar_star(const CfDerivatives& cf); // psi^(1)(u) / (i Delta)
SpectralEstimate h_bar_star(const CfDerivatives& cf); // -psi^(2)(u) / Delta
SpectralEstimate p_bar_star(const CfDerivatives& cf); // i psi^(3)(u) / Delta

// Two-subsample estimator (psi1' psi2' - psi1'' psi2) / Delta.
SpectralEstimate h_hat_star(const SplitSample& split, const FrequencyGrid& grid);

// f_m(x) = (1/2pi) int_{-pi m}^{pi m} exp(-iux) f*(u) du by trapezoid over the
// spectral grid, with the exact interval endpoints handled by interpolation.
DensityEstimate invert_on_cutoff(const SpectralEstimate& spec, double m,
                                 const StateGrid& x_grid);

// Closed sinc-kernel form of the same inversion, (1/(N Delta)) sum Z^l m sinc(m(Z-x)).
DensityEstimate closed_form_sinc_estimate(const SampleIncrements& sample, Target target,
                                          double m, const StateGrid& x_grid);
// Two-subsample double-sum form for H_HAT.
DensityEstimate closed_form_sinc_estimate(const SplitSample& split, double m,
                                          const StateGrid& x_grid);

// (1/2pi) int_{-pi m}^{pi m} |f*(u)|^2 du.
double squared_norm(const SpectralEstimate& spec, double m);

// Norms for every cutoff of an increasing grid, accumulated left to right so the
// sequence is exactly nondecreasing.
Eigen::ArrayXd squared_norms(const SpectralEstimate& spec,
                             const Eigen::ArrayXd& cutoffs);

// n_hat(x) = f(x) / x^l outside [-a, a], zero inside.
DensityEstimate truncated_levy_density(const DensityEstimate& est, double exclusion_a);

} // namespace levy
