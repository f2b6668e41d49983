#pragma once

#include "levy/ecf.hpp"
#include "levy/spectral.hpp"

namespace levy {

// Candidate cutoffs, strictly increasing and positive.
struct CutoffGrid {
    Eigen::ArrayXd values;

    // 100 equispaced values over (0, m_max], first value m_max/count.
    static CutoffGrid equispaced(double m_max = 10.0, Eigen::Index count = 100);

    // Grid restricted to values <= bound (used as sqrt(n Delta) for the p target).
    CutoffGrid capped(double bound) const;

    double max() const { return values[values.size() - 1]; }
    void validate() const;
};

// Penalty constants; defaults follow the simulation calibration.
struct PenaltyConfig {
    double kappa_g = 7.5;
    double kappa_h = 4.0;
    double kappa_p = 3.0;
    double kappa_h_hat = 4.0; // two-subsample penalty reuses the h calibration
};

struct SelectionDiagnostics {
    Eigen::ArrayXd m;
    Eigen::ArrayXd norm2;
    Eigen::ArrayXd penalty;
    Eigen::ArrayXd criterion; // -norm2 + penalty
    Eigen::Index chosen_index = 0;
    double chosen_m = 0.0;
};

// pen(m) = kappa (m/(n Delta^2)) [ ((1/n) sum_1 Z^2)((1/n) sum_2 Z^2) + (1/n) sum_1 Z^4 ],
// n the half-sample size.
double penalty_h_hat(const SplitSample& split, double kappa, double m);

// pen(m) = kappa' (m/(n Delta^2)) (1/(2n)) sum Z^4 over the full 2n-sample.
double penalty_h_bar(const SampleIncrements& sample, double kappa_prime, double m);

// pen(m) = kappa' (m/(n Delta^2)) (1/n) sum Z^6.
double penalty_p_bar(const SampleIncrements& sample, double kappa_prime, double m);

// pen(m) = kappa (m/(n Delta^2)) (1/n) sum Z^2 (single-sample g estimator).
double penalty_g_bar(const SampleIncrements& sample, double kappa, double m);

double penalty_for(Target target, const SampleIncrements& sample,
                   const PenaltyConfig& penalty, double m);

// Smallest argmin of -norm2 + penalty over the grid.
SelectionDiagnostics select_cutoff(const Eigen::ArrayXd& norms,
                                   const Eigen::ArrayXd& penalties,
                                   const CutoffGrid& grid);

} // namespace levy
