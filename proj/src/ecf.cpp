#include "levy/ecf.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace levy {

void FrequencyGrid::validate() const {
    if (count < 2)
        throw std::invalid_argument("FrequencyGrid: count must be >= 2");
    if (!(u_min < u_max))
        throw std::invalid_argument("FrequencyGrid: u_min must be < u_max");
}

FrequencyGrid FrequencyGrid::symmetric(double u_max, Eigen::Index half) {
    if (!(u_max > 0.0) || half < 1)
        throw std::invalid_argument("FrequencyGrid::symmetric: need u_max > 0, half >= 1");
    return FrequencyGrid{-u_max, u_max, 2 * half + 1};
}

Eigen::ArrayXd FrequencyGrid::points() const {
    validate();
    Eigen::ArrayXd u(count);
    if (is_symmetric()) {
        const Eigen::Index half = (count - 1) / 2;
        const double du = u_max / static_cast<double>(half);
        u[half] = 0.0;
        for (Eigen::Index k = 1; k < half; ++k) {
            const double v = static_cast<double>(k) * du;
            u[half + k] = v;
            u[half - k] = -v;
        }
        u[count - 1] = u_max;
        u[0] = -u_max;
    } else {
        const double du = spacing();
        for (Eigen::Index j = 0; j < count; ++j)
            u[j] = u_min + static_cast<double>(j) * du;
        u[count - 1] = u_max;
    }
    return u;
}

const Eigen::ArrayXcd& CfDerivatives::order(int j) const {
    if (j < 0 || j > max_order)
        throw std::invalid_argument("CfDerivatives: order not computed");
    return values[static_cast<std::size_t>(j)];
}

namespace {

using Accum = std::array<Eigen::ArrayXcd, 4>;

// Sums S_j(u) = sum_k Z_k^j exp(i u Z_k) over one block of samples, for the
// `npts` frequencies u = u0 + t*du, t = 0..npts-1. One sincos pair per sample;
// the grid is walked by phase rotation and the orders share the phase.
void accumulate_block(const double* z, Eigen::Index nz, int max_order,
                      double u0, double du, Eigen::Index npts, Accum& acc) {
    for (int j = 0; j <= max_order; ++j) {
        if (acc[static_cast<std::size_t>(j)].size() != npts)
            acc[static_cast<std::size_t>(j)] = Eigen::ArrayXcd::Zero(npts);
    }
    std::complex<double>* a0 = acc[0].data();
    std::complex<double>* a1 = max_order >= 1 ? acc[1].data() : nullptr;
    std::complex<double>* a2 = max_order >= 2 ? acc[2].data() : nullptr;
    std::complex<double>* a3 = max_order >= 3 ? acc[3].data() : nullptr;

    for (Eigen::Index k = 0; k < nz; ++k) {
        const double zk = z[k];
        double pr, pi;
        if (u0 == 0.0) {
            pr = 1.0;
            pi = 0.0;
        } else {
            pr = std::cos(u0 * zk);
            pi = std::sin(u0 * zk);
        }
        const double sr = std::cos(du * zk);
        const double si = std::sin(du * zk);
        const double z2 = zk * zk;
        const double z3 = z2 * zk;
        switch (max_order) {
        case 0:
            for (Eigen::Index t = 0; t < npts; ++t) {
                a0[t] += std::complex<double>(pr, pi);
                const double nr = pr * sr - pi * si;
                pi = pr * si + pi * sr;
                pr = nr;
            }
            break;
        case 1:
            for (Eigen::Index t = 0; t < npts; ++t) {
                a0[t] += std::complex<double>(pr, pi);
                a1[t] += std::complex<double>(zk * pr, zk * pi);
                const double nr = pr * sr - pi * si;
                pi = pr * si + pi * sr;
                pr = nr;
            }
            break;
        case 2:
            for (Eigen::Index t = 0; t < npts; ++t) {
                a0[t] += std::complex<double>(pr, pi);
                a1[t] += std::complex<double>(zk * pr, zk * pi);
                a2[t] += std::complex<double>(z2 * pr, z2 * pi);
                const double nr = pr * sr - pi * si;
                pi = pr * si + pi * sr;
                pr = nr;
            }
            break;
        default:
            for (Eigen::Index t = 0; t < npts; ++t) {
                a0[t] += std::complex<double>(pr, pi);
                a1[t] += std::complex<double>(zk * pr, zk * pi);
                a2[t] += std::complex<double>(z2 * pr, z2 * pi);
                a3[t] += std::complex<double>(z3 * pr, z3 * pi);
                const double nr = pr * sr - pi * si;
                pi = pr * si + pi * sr;
                pr = nr;
            }
            break;
        }
    }
}

void add_into(Accum& dst, const Accum& src, int max_order) {
    for (int j = 0; j <= max_order; ++j)
        dst[static_cast<std::size_t>(j)] += src[static_cast<std::size_t>(j)];
}

// Pairwise combination of per-block sums via a binary-carry stack, so the
// reduction tree is fixed regardless of how many blocks there are.
Accum pairwise_blocks(const Eigen::ArrayXd& z, int max_order, double u0, double du,
                      Eigen::Index npts) {
    constexpr Eigen::Index kBlock = 256;
    std::vector<std::optional<Accum>> stack;
    const Eigen::Index n = z.size();
    for (Eigen::Index lo = 0; lo < n; lo += kBlock) {
        const Eigen::Index len = std::min(kBlock, n - lo);
        Accum cur;
        accumulate_block(z.data() + lo, len, max_order, u0, du, npts, cur);
        std::size_t level = 0;
        while (level < stack.size() && stack[level].has_value()) {
            add_into(cur, *stack[level], max_order);
            stack[level].reset();
            ++level;
        }
        if (level == stack.size())
            stack.emplace_back();
        stack[level] = std::move(cur);
    }
    Accum total;
    for (int j = 0; j <= max_order; ++j)
        total[static_cast<std::size_t>(j)] = Eigen::ArrayXcd::Zero(npts);
    for (const auto& entry : stack)
        if (entry.has_value())
            add_into(total, *entry, max_order);
    return total;
}

// Multiply by i^j in place; the four cases are exact component swaps.
void apply_i_power(Eigen::ArrayXcd& v, int j) {
    switch (j & 3) {
    case 0:
        return;
    case 1:
        for (Eigen::Index t = 0; t < v.size(); ++t)
            v[t] = std::complex<double>(-v[t].imag(), v[t].real());
        return;
    case 2:
        v = -v;
        return;
    default:
        for (Eigen::Index t = 0; t < v.size(); ++t)
            v[t] = std::complex<double>(v[t].imag(), -v[t].real());
        return;
    }
}

} // namespace

CfDerivatives cf_derivatives(const SampleIncrements& sample, int max_order,
                             const FrequencyGrid& grid) {
    if (sample.size() < 1)
        throw std::invalid_argument("cf_derivatives: empty sample");
    if (max_order < 0 || max_order > 3)
        throw std::invalid_argument("cf_derivatives: max_order must be in 0..3");
    grid.validate();

    CfDerivatives out;
    out.grid = grid;
    out.max_order = max_order;
    out.sample_size = sample.size();
    out.delta = sample.delta;
    const double inv_n = 1.0 / static_cast<double>(sample.size());

    if (grid.is_symmetric()) {
        const Eigen::Index half = (grid.count - 1) / 2;
        const double du = grid.u_max / static_cast<double>(half);
        Accum pos = pairwise_blocks(sample.z, max_order, 0.0, du, half + 1);
        for (int j = 0; j <= max_order; ++j) {
            auto& s = pos[static_cast<std::size_t>(j)];
            Eigen::ArrayXcd full(grid.count);
            full[half] = s[0];
            for (Eigen::Index k = 1; k <= half; ++k) {
                full[half + k] = s[k];
                full[half - k] = std::conj(s[k]); // Z real: S_j(-u) = conj S_j(u)
            }
            apply_i_power(full, j);
            out.values[static_cast<std::size_t>(j)] = full * inv_n;
        }
    } else {
        Accum s = pairwise_blocks(sample.z, max_order, grid.u_min, grid.spacing(),
                                  grid.count);
        for (int j = 0; j <= max_order; ++j) {
            auto& v = s[static_cast<std::size_t>(j)];
            apply_i_power(v, j);
            out.values[static_cast<std::size_t>(j)] = v * inv_n;
        }
    }
    return out;
}

SplitSample split_halves(const SampleIncrements& sample) {
    const Eigen::Index n = sample.size();
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("split_halves: need an even sample of length >= 2");
    SplitSample out;
    out.first_half.delta = sample.delta;
    out.second_half.delta = sample.delta;
    out.first_half.z = sample.z.head(n / 2);
    out.second_half.z = sample.z.tail(n / 2);
    return out;
}

} // namespace levy
