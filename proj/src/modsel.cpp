#include "levy/modsel.hpp"

#include "levy/reduce.hpp"

#include <stdexcept>

namespace levy {

void CutoffGrid::validate() const {
    if (values.size() < 1)
        throw std::invalid_argument("CutoffGrid: empty");
    if (!(values[0] > 0.0))
        throw std::invalid_argument("CutoffGrid: cutoffs must be positive");
    for (Eigen::Index i = 0; i + 1 < values.size(); ++i)
        if (!(values[i] < values[i + 1]))
            throw std::invalid_argument("CutoffGrid: cutoffs must be strictly increasing");
}

CutoffGrid CutoffGrid::equispaced(double m_max, Eigen::Index count) {
    if (!(m_max > 0.0) || count < 1)
        throw std::invalid_argument("CutoffGrid::equispaced: bad parameters");
    CutoffGrid grid;
    grid.values.resize(count);
    for (Eigen::Index i = 0; i < count; ++i)
        grid.values[i] = m_max * static_cast<double>(i + 1) / static_cast<double>(count);
    return grid;
}

CutoffGrid CutoffGrid::capped(double bound) const {
    validate();
    Eigen::Index keep = 0;
    while (keep < values.size() && values[keep] <= bound)
        ++keep;
    if (keep == 0) // keep at least the smallest cutoff so selection stays defined
        keep = 1;
    CutoffGrid out;
    out.values = values.head(keep);
    return out;
}

namespace {

double mean_power(const Eigen::ArrayXd& z, int power) {
    return pairwise_sum(z.size(), [&](Eigen::Index i) {
               double w = z[i];
               for (int p = 1; p < power; ++p)
                   w *= z[i];
               return w;
           }) /
           static_cast<double>(z.size());
}

} // namespace

double penalty_h_hat(const SplitSample& split, double kappa, double m) {
    const Eigen::Index n = split.first_half.size();
    if (n < 1 || split.second_half.size() < 1)
        throw std::invalid_argument("penalty_h_hat: empty half-sample");
    if (split.first_half.delta != split.second_half.delta)
        throw std::invalid_argument("penalty_h_hat: halves have different deltas");
    const double d = split.first_half.delta;
    const double s2_1 = mean_power(split.first_half.z, 2);
    const double s2_2 = mean_power(split.second_half.z, 2);
    const double s4_1 = mean_power(split.first_half.z, 4);
    return kappa * m / (static_cast<double>(n) * d * d) * (s2_1 * s2_2 + s4_1);
}

double penalty_h_bar(const SampleIncrements& sample, double kappa_prime, double m) {
    const Eigen::Index total = sample.size();
    if (total < 1)
        throw std::invalid_argument("penalty_h_bar: empty sample");
    const double n = static_cast<double>(total) / 2.0; // sample plays the 2n role
    const double d = sample.delta;
    return kappa_prime * m / (n * d * d) * mean_power(sample.z, 4);
}

double penalty_p_bar(const SampleIncrements& sample, double kappa_prime, double m) {
    const Eigen::Index n = sample.size();
    if (n < 1)
        throw std::invalid_argument("penalty_p_bar: empty sample");
    const double d = sample.delta;
    return kappa_prime * m / (static_cast<double>(n) * d * d) * mean_power(sample.z, 6);
}

double penalty_g_bar(const SampleIncrements& sample, double kappa, double m) {
    const Eigen::Index n = sample.size();
    if (n < 1)
        throw std::invalid_argument("penalty_g_bar: empty sample");
    const double d = sample.delta;
    return kappa * m / (static_cast<double>(n) * d * d) * mean_power(sample.z, 2);
}

double penalty_for(Target target, const SampleIncrements& sample,
                   const PenaltyConfig& penalty, double m) {
    switch (target) {
    case Target::G:
        return penalty_g_bar(sample, penalty.kappa_g, m);
    case Target::H_BAR:
        return penalty_h_bar(sample, penalty.kappa_h, m);
    case Target::P_BAR:
        return penalty_p_bar(sample, penalty.kappa_p, m);
    case Target::H_HAT:
        throw std::invalid_argument("penalty_for: H_HAT needs a SplitSample");
    }
    throw std::invalid_argument("penalty_for: unknown target");
}

SelectionDiagnostics select_cutoff(const Eigen::ArrayXd& norms,
                                   const Eigen::ArrayXd& penalties,
                                   const CutoffGrid& grid) {
    grid.validate();
    const Eigen::Index nm = grid.values.size();
    if (norms.size() != nm || penalties.size() != nm)
        throw std::invalid_argument("select_cutoff: norms/penalties not aligned with grid");

    SelectionDiagnostics diag;
    diag.m = grid.values;
    diag.norm2 = norms;
    diag.penalty = penalties;
    diag.criterion = -norms + penalties;
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < nm; ++i)
        if (diag.criterion[i] < diag.criterion[best]) // strict: ties go to smaller m
            best = i;
    diag.chosen_index = best;
    diag.chosen_m = grid.values[best];
    return diag;
}

} // namespace levy
