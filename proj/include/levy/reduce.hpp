#pragma once

#include <Eigen/Dense>

#include <span>

namespace levy {

// Pairwise (tree) summation: error grows like log(n) * ulp instead of n * ulp,
// and the result does not depend on how work is split across threads.
template <class F>
double pairwise_sum(Eigen::Index n, F&& term) {
    constexpr Eigen::Index kLeaf = 64;
    struct Rec {
        F& f;
        double operator()(Eigen::Index lo, Eigen::Index len) {
            if (len <= kLeaf) {
                double s = 0.0;
                for (Eigen::Index i = 0; i < len; ++i)
                    s += f(lo + i);
                return s;
            }
            const Eigen::Index half = len / 2;
            return (*this)(lo, half) + (*this)(lo + half, len - half);
        }
    } rec{term};
    return n > 0 ? rec(0, n) : 0.0;
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_sum(static_cast<Eigen::Index>(v.size()),
                        [&](Eigen::Index i) { return v[i]; });
}

inline double pairwise_sum(const Eigen::ArrayXd& v) {
    return pairwise_sum(v.size(), [&](Eigen::Index i) { return v[i]; });
}

} // namespace levy
