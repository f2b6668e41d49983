#include "levy/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace levy {

int target_power(Target t) {
    switch (t) {
    case Target::G:
        return 1;
    case Target::H_HAT:
    case Target::H_BAR:
        return 2;
    case Target::P_BAR:
        return 3;
    }
    return 0;
}

const char* target_name(Target t) {
    switch (t) {
    case Target::G:
        return "g";
    case Target::H_HAT:
        return "h_hat";
    case Target::H_BAR:
        return "h";
    case Target::P_BAR:
        return "p";
    }
    return "?";
}

void StateGrid::validate() const {
    if (count < 2)
        throw std::invalid_argument("StateGrid: count must be >= 2");
    if (!(x_min < x_max))
        throw std::invalid_argument("StateGrid: x_min must be < x_max");
}

Eigen::ArrayXd StateGrid::points() const {
    validate();
    Eigen::ArrayXd x(count);
    const double dx = spacing();
    for (Eigen::Index i = 0; i < count; ++i)
        x[i] = x_min + static_cast<double>(i) * dx;
    x[count - 1] = x_max;
    return x;
}

double sinc(double t) {
    const double a = std::abs(t);
    if (a < 1e-8) {
        const double pt = M_PI * t;
        return 1.0 - pt * pt / 6.0;
    }
    return std::sin(M_PI * t) / (M_PI * t);
}

namespace {

// (a+bi) -> (-b+ai), exact.
Eigen::ArrayXcd mul_i(const Eigen::ArrayXcd& v) {
    Eigen::ArrayXcd out(v.size());
    for (Eigen::Index t = 0; t < v.size(); ++t)
        out[t] = std::complex<double>(-v[t].imag(), v[t].real());
    return out;
}

// (a+bi) -> (b-ai), exact.
Eigen::ArrayXcd mul_neg_i(const Eigen::ArrayXcd& v) {
    Eigen::ArrayXcd out(v.size());
    for (Eigen::Index t = 0; t < v.size(); ++t)
        out[t] = std::complex<double>(v[t].imag(), -v[t].real());
    return out;
}

} // namespace

SpectralEstimate g_bar_star(const CfDerivatives& cf) {
    if (cf.max_order < 1)
        throw std::invalid_argument("g_bar_star: needs CF derivatives up to order 1");
    SpectralEstimate out;
    out.grid = cf.grid;
    out.values = mul_neg_i(cf.order(1)) / cf.delta;
    out.target = Target::G;
    out.delta = cf.delta;
    out.sample_size = cf.sample_size;
    return out;
}

SpectralEstimate h_bar_star(const CfDerivatives& cf) {
    if (cf.max_order < 2)
        throw std::invalid_argument("h_bar_star: needs CF derivatives up to order 2");
    SpectralEstimate out;
    out.grid = cf.grid;
    out.values = (-cf.order(2)) / cf.delta;
    out.target = Target::H_BAR;
    out.delta = cf.delta;
    out.sample_size = cf.sample_size;
    return out;
}

SpectralEstimate p_bar_star(const CfDerivatives& cf) {
    if (cf.max_order < 3)
        throw std::invalid_argument("p_bar_star: needs CF derivatives up to order 3");
    SpectralEstimate out;
    out.grid = cf.grid;
    out.values = mul_i(cf.order(3)) / cf.delta;
    out.target = Target::P_BAR;
    out.delta = cf.delta;
    out.sample_size = cf.sample_size;
    return out;
}

SpectralEstimate h_hat_star(const SplitSample& split, const FrequencyGrid& grid) {
    if (split.first_half.size() < 1 || split.second_half.size() < 1)
        throw std::invalid_argument("h_hat_star: empty half-sample");
    if (split.first_half.delta != split.second_half.delta)
        throw std::invalid_argument("h_hat_star: halves have different deltas");
    const CfDerivatives cf1 = cf_derivatives(split.first_half, 2, grid);
    const CfDerivatives cf2 = cf_derivatives(split.second_half, 1, grid);
    SpectralEstimate out;
    out.grid = grid;
    out.values = (cf1.order(1) * cf2.order(1) - cf1.order(2) * cf2.order(0)) /
                 split.first_half.delta;
    out.target = Target::H_HAT;
    out.delta = split.first_half.delta;
    out.sample_size = split.first_half.size();
    return out;
}

namespace {

// Quadrature nodes for the band [-pi m, pi m]: the spectral grid points inside
// the band plus the exact band endpoints, whose values are linearly
// interpolated. Weights are composite-trapezoid cell halves.
struct BandNodes {
    std::vector<double> u;
    std::vector<std::complex<double>> f;
    std::vector<double> w;
};

double band_limit(const SpectralEstimate& spec, double m) {
    if (!(m > 0.0))
        throw std::invalid_argument("cutoff m must be > 0");
    double cap = M_PI * m;
    const double hi = spec.grid.u_max;
    if (cap > hi) {
        if (cap > hi * (1.0 + 1e-9))
            throw std::invalid_argument("spectral grid does not cover [-pi m, pi m]");
        cap = hi;
    }
    if (-cap < spec.grid.u_min)
        throw std::invalid_argument("spectral grid does not cover [-pi m, pi m]");
    return cap;
}

BandNodes band_nodes(const Eigen::ArrayXd& u, const Eigen::ArrayXcd& f, double lo,
                     double hi) {
    BandNodes nodes;
    const Eigen::Index n = u.size();
    Eigen::Index first = 0;
    while (first < n && u[first] < lo)
        ++first;
    Eigen::Index last = n - 1;
    while (last >= 0 && u[last] > hi)
        --last;

    auto interp = [&](double at) -> std::complex<double> {
        Eigen::Index j = 0;
        while (j + 1 < n && u[j + 1] < at)
            ++j;
        const double t = (at - u[j]) / (u[j + 1] - u[j]);
        return f[j] * (1.0 - t) + f[j + 1] * t;
    };

    if (first > last) { // band inside one grid cell
        nodes.u = {lo, hi};
        nodes.f = {interp(lo), interp(hi)};
    } else {
        if (u[first] > lo) {
            nodes.u.push_back(lo);
            nodes.f.push_back(interp(lo));
        }
        for (Eigen::Index j = first; j <= last; ++j) {
            nodes.u.push_back(u[j]);
            nodes.f.push_back(f[j]);
        }
        if (u[last] < hi) {
            nodes.u.push_back(hi);
            nodes.f.push_back(interp(hi));
        }
    }
    const std::size_t np = nodes.u.size();
    nodes.w.assign(np, 0.0);
    for (std::size_t j = 0; j + 1 < np; ++j) {
        const double cell = 0.5 * (nodes.u[j + 1] - nodes.u[j]);
        nodes.w[j] += cell;
        nodes.w[j + 1] += cell;
    }
    return nodes;
}

// Trapezoid of |f|^2 over [lo, hi] using the grid nodes inside, with the
// nonnegative integrand interpolated at the boundary; every term is >= 0.
double band_norm2(const Eigen::ArrayXd& u, const Eigen::ArrayXd& f2, double lo,
                  double hi) {
    const Eigen::Index n = u.size();
    Eigen::Index first = 0;
    while (first < n && u[first] < lo)
        ++first;
    Eigen::Index last = n - 1;
    while (last >= 0 && u[last] > hi)
        --last;

    auto interp = [&](double at) -> double {
        Eigen::Index j = 0;
        while (j + 1 < n && u[j + 1] < at)
            ++j;
        const double t = (at - u[j]) / (u[j + 1] - u[j]);
        return f2[j] * (1.0 - t) + f2[j + 1] * t;
    };

    if (first > last)
        return 0.5 * (hi - lo) * (interp(lo) + interp(hi));
    double total = 0.0;
    if (u[first] > lo)
        total += 0.5 * (u[first] - lo) * (interp(lo) + f2[first]);
    for (Eigen::Index j = first; j < last; ++j)
        total += 0.5 * (u[j + 1] - u[j]) * (f2[j] + f2[j + 1]);
    if (u[last] < hi)
        total += 0.5 * (hi - u[last]) * (f2[last] + interp(hi));
    return total;
}

} // namespace

DensityEstimate invert_on_cutoff(const SpectralEstimate& spec, double m,
                                 const StateGrid& x_grid) {
    x_grid.validate();
    const double cap = band_limit(spec, m);
    const Eigen::ArrayXd u = spec.grid.points();
    const BandNodes nodes = band_nodes(u, spec.values, -cap, cap);

    const Eigen::Index nx = x_grid.count;
    const double x0 = x_grid.x_min;
    const double dx = x_grid.spacing();
    Eigen::ArrayXd re = Eigen::ArrayXd::Zero(nx);
    Eigen::ArrayXd im = Eigen::ArrayXd::Zero(nx);
    const double norm = 1.0 / (2.0 * M_PI);
    for (std::size_t j = 0; j < nodes.u.size(); ++j) {
        const std::complex<double> c = nodes.f[j] * (nodes.w[j] * norm);
        const double cr = c.real(), ci = c.imag();
        // exp(-i u x) walked across the equispaced x grid
        double pr = std::cos(nodes.u[j] * x0);
        double pi = -std::sin(nodes.u[j] * x0);
        const double sr = std::cos(nodes.u[j] * dx);
        const double si = -std::sin(nodes.u[j] * dx);
        for (Eigen::Index t = 0; t < nx; ++t) {
            re[t] += cr * pr - ci * pi;
            im[t] += cr * pi + ci * pr;
            const double nr = pr * sr - pi * si;
            pi = pr * si + pi * sr;
            pr = nr;
        }
    }

    for (Eigen::Index t = 0; t < nx; ++t) {
        if (std::abs(im[t]) > 1e-8 * (1.0 + std::abs(re[t])))
            throw std::runtime_error(
                "invert_on_cutoff: inversion is not real; grid is not symmetric enough");
    }

    DensityEstimate out;
    out.x_grid = x_grid;
    out.values = std::move(re);
    out.cutoff_m = m;
    out.target = spec.target;
    out.method = Method::QUADRATURE;
    return out;
}

DensityEstimate closed_form_sinc_estimate(const SampleIncrements& sample, Target target,
                                          double m, const StateGrid& x_grid) {
    if (sample.size() < 1)
        throw std::invalid_argument("closed_form_sinc_estimate: empty sample");
    if (target == Target::H_HAT)
        throw std::invalid_argument("closed_form_sinc_estimate: H_HAT needs a SplitSample");
    if (!(m > 0.0))
        throw std::invalid_argument("cutoff m must be > 0");
    x_grid.validate();
    const int power = target_power(target);
    const Eigen::ArrayXd x = x_grid.points();
    const double scale = m / (static_cast<double>(sample.size()) * sample.delta);

    DensityEstimate out;
    out.x_grid = x_grid;
    out.values = Eigen::ArrayXd::Zero(x_grid.count);
    for (Eigen::Index k = 0; k < sample.size(); ++k) {
        const double zk = sample.z[k];
        double w = zk;
        for (int p = 1; p < power; ++p)
            w *= zk;
        for (Eigen::Index t = 0; t < x.size(); ++t)
            out.values[t] += w * sinc(m * (zk - x[t]));
    }
    out.values *= scale;
    out.cutoff_m = m;
    out.target = target;
    out.method = Method::SINC_SUM;
    return out;
}

DensityEstimate closed_form_sinc_estimate(const SplitSample& split, double m,
                                          const StateGrid& x_grid) {
    if (split.first_half.size() < 1 || split.second_half.size() < 1)
        throw std::invalid_argument("closed_form_sinc_estimate: empty half-sample");
    if (split.first_half.delta != split.second_half.delta)
        throw std::invalid_argument("closed_form_sinc_estimate: halves have different deltas");
    if (!(m > 0.0))
        throw std::invalid_argument("cutoff m must be > 0");
    x_grid.validate();
    const Eigen::ArrayXd x = x_grid.points();
    const Eigen::Index n = split.first_half.size();
    const Eigen::Index n2 = split.second_half.size();
    const double scale =
        m / (static_cast<double>(n) * static_cast<double>(n2) * split.first_half.delta);

    DensityEstimate out;
    out.x_grid = x_grid;
    out.values = Eigen::ArrayXd::Zero(x_grid.count);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double zk = split.first_half.z[k];
        for (Eigen::Index j = 0; j < n2; ++j) {
            const double zj = split.second_half.z[j];
            const double w = zk * zk - zk * zj;
            const double s = zk + zj;
            for (Eigen::Index t = 0; t < x.size(); ++t)
                out.values[t] += w * sinc(m * (s - x[t]));
        }
    }
    out.values *= scale;
    out.cutoff_m = m;
    out.target = Target::H_HAT;
    out.method = Method::SINC_SUM;
    return out;
}

double squared_norm(const SpectralEstimate& spec, double m) {
    const double cap = band_limit(spec, m);
    const Eigen::ArrayXd u = spec.grid.points();
    const Eigen::ArrayXd f2 = spec.values.abs2();
    return band_norm2(u, f2, -cap, cap) / (2.0 * M_PI);
}

Eigen::ArrayXd squared_norms(const SpectralEstimate& spec, const Eigen::ArrayXd& cutoffs) {
    const Eigen::Index nm = cutoffs.size();
    if (nm == 0)
        return {};
    for (Eigen::Index i = 0; i + 1 < nm; ++i)
        if (!(cutoffs[i] < cutoffs[i + 1]))
            throw std::invalid_argument("squared_norms: cutoffs must be strictly increasing");
    const Eigen::ArrayXd u = spec.grid.points();
    const Eigen::ArrayXd f2 = spec.values.abs2();
    const double inv2pi = 1.0 / (2.0 * M_PI);

    Eigen::ArrayXd out(nm);
    double prev_cap = band_limit(spec, cutoffs[0]);
    double total = band_norm2(u, f2, -prev_cap, prev_cap) * inv2pi;
    out[0] = total;
    for (Eigen::Index i = 1; i < nm; ++i) {
        const double cap = band_limit(spec, cutoffs[i]);
        // both tails of the band increment; each piece is nonnegative
        total += (band_norm2(u, f2, prev_cap, cap) +
                  band_norm2(u, f2, -cap, -prev_cap)) *
                 inv2pi;
        out[i] = total;
        prev_cap = cap;
    }
    return out;
}

DensityEstimate truncated_levy_density(const DensityEstimate& est, double exclusion_a) {
    if (!(exclusion_a > 0.0))
        throw std::invalid_argument("truncated_levy_density: exclusion radius must be > 0");
    const int power = target_power(est.target);
    const Eigen::ArrayXd x = est.x_grid.points();
    DensityEstimate out = est;
    for (Eigen::Index t = 0; t < x.size(); ++t) {
        if (std::abs(x[t]) <= exclusion_a) {
            out.values[t] = 0.0;
        } else {
            double xp = x[t];
            for (int p = 1; p < power; ++p)
                xp *= x[t];
            out.values[t] = est.values[t] / xp;
        }
    }
    return out;
}

} // namespace levy
