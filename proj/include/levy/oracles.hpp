#pragma once

#include "levy/models.hpp"
#include "levy/spectral.hpp"

#include <complex>

namespace levy {

// Modified Bessel function of the third kind K_nu(x), x > 0, real order.
double bessel_k(double nu, double x);

// The model's Levy density n(x); x = 0 is outside the domain.
double levy_density(const ModelSpec& model, double x);

// x^l n(x) for the target's power l, with value 0 at x = 0.
double true_target_at(const ModelSpec& model, Target target, double x);
Eigen::ArrayXd true_target(const ModelSpec& model, Target target,
                           const Eigen::ArrayXd& x);

// Fourier transform of the target, closed form where available, otherwise
// numerical quadrature of the x-space target over [-40, 40] (absolute accuracy
// near 1e-9 for the default models).
std::complex<double> true_fourier_at(const ModelSpec& model, Target target, double u);
Eigen::ArrayXcd true_fourier(const ModelSpec& model, Target target,
                             const Eigen::ArrayXd& u);
bool has_closed_form_fourier(const ModelSpec& model);

// Moments of the jump measure, int x^l n(x) dx.
double levy_moment(const JumpPart& jumps, int ell);

struct TrueMoments {
    double b = 0.0;  // b0 + int x n(x) dx
    double c2 = 0.0; // sigma^2 + int x^2 n(x) dx
    double c3 = 0.0;
    double c4 = 0.0;
    double c6 = 0.0;
};

TrueMoments true_moments(const ModelSpec& model);

} // namespace levy
