#include "levy/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace levy {

// ---------------------------------------------------------------------------
// Bessel K
// ---------------------------------------------------------------------------

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu), gam2 = their mean.
void reciprocal_gamma_pair(double mu, double& gam1, double& gam2) {
    const double gampl = 1.0 / std::tgamma(1.0 + mu);
    const double gammi = 1.0 / std::tgamma(1.0 - mu);
    gam2 = 0.5 * (gammi + gampl);
    if (std::abs(mu) < 1e-4) {
        // series of 1/Gamma(1+z): a1 = gamma_E, a3 below
        constexpr double a1 = 0.57721566490153286;
        constexpr double a3 = -0.04200263503409524;
        gam1 = -(a1 + a3 * mu * mu);
    } else {
        gam1 = (gammi - gampl) / (2.0 * mu);
    }
}

// Temme's series for K_mu, K_{mu+1}, valid for |mu| <= 1/2 and x <= 2.
void bessel_k_small(double mu, double x, double& kmu, double& kmu1) {
    const double x2 = 0.5 * x;
    const double mu2 = mu * mu;
    const double pimu = M_PI * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    const double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    double gam1, gam2;
    reciprocal_gamma_pair(mu, gam1, gam2);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    const double ee = std::exp(e);
    double p = 0.5 * ee * std::tgamma(1.0 + mu);
    double q = 0.5 * std::tgamma(1.0 - mu) / ee;
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= kMaxIter; ++i) {
        ff = (i * ff + p + q) / (i * i - mu2);
        c *= d / i;
        p /= (i - mu);
        q /= (i + mu);
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - i * ff);
        if (std::abs(del) < std::abs(sum) * kEps)
            break;
    }
    kmu = sum;
    kmu1 = sum1 * (2.0 / x);
}

// Steed's continued fraction CF2 for x > 2.
void bessel_k_large(double mu, double x, double& kmu, double& kmu1) {
    const double mu2 = mu * mu;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= kMaxIter; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < kEps)
            break;
    }
    h = a1 * h;
    kmu = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
    kmu1 = kmu * (mu + x + 0.5 - h) / x;
}

} // namespace

double bessel_k(double nu, double x) {
    if (!(x > 0.0))
        throw std::domain_error("bessel_k: x must be > 0");
    nu = std::abs(nu); // K_{-nu} = K_nu
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl; // mu in [-1/2, 1/2)
    double kmu, kmu1;
    if (x <= 2.0)
        bessel_k_small(mu, x, kmu, kmu1);
    else
        bessel_k_large(mu, x, kmu, kmu1);
    if (nl == 0)
        return kmu;
    double k0 = kmu, k1 = kmu1;
    for (int i = 1; i < nl; ++i) {
        const double k2 = k0 + 2.0 * (mu + i) / x * k1;
        k0 = k1;
        k1 = k2;
    }
    return k1;
}

// ---------------------------------------------------------------------------
// Densities
// ---------------------------------------------------------------------------

namespace {

double jump_pdf(const JumpLaw& law, double x) {
    return std::visit([x](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, GaussianJump>) {
            const double t = (x - l.mean) / l.sd;
            return std::exp(-0.5 * t * t) / (l.sd * std::sqrt(2.0 * M_PI));
        } else if constexpr (std::is_same_v<T, ExponentialJump>) {
            return x > 0.0 ? l.rate * std::exp(-l.rate * x) : 0.0;
        } else {
            if (x <= l.lo || x >= l.hi)
                return 0.0;
            const double w = l.hi - l.lo;
            const double t = (x - l.lo) / w;
            const double lognorm = std::lgamma(l.a + l.b) - std::lgamma(l.a) -
                                   std::lgamma(l.b);
            return std::exp(lognorm + (l.a - 1.0) * std::log(t) +
                            (l.b - 1.0) * std::log1p(-t)) /
                   w;
        }
    }, law);
}

// Adaptive Simpson on [a, b].
template <class F>
double adaptive_simpson(F f, double a, double b, double tol, int depth,
                        double fa, double fm, double fb) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, 0.5 * tol, depth - 1, fa, flm, fm) +
           adaptive_simpson(f, m, b, 0.5 * tol, depth - 1, fm, frm, fb);
}

template <class F>
double integrate(F f, double a, double b, double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    return adaptive_simpson(f, a, b, tol, 48, f(a), f(m), f(b));
}

double subordinator_levy_density(const Subordinator& sub, double g) {
    return std::visit([g](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CompoundPoisson>) {
            return s.intensity * jump_pdf(s.law, g);
        } else if constexpr (std::is_same_v<S, LevyGamma>) {
            return g > 0.0 ? s.beta * std::exp(-s.alpha * g) / g : 0.0;
        } else {
            return g > 0.0
                       ? s.beta * std::pow(g, s.delta - 1.5) * std::exp(-s.alpha * g)
                       : 0.0;
        }
    }, sub);
}

// (beta, alpha, delta) when the subordinator is of the power family.
bool power_family(const Subordinator& sub, double& beta, double& alpha, double& delta) {
    if (const auto* lg = std::get_if<LevyGamma>(&sub)) {
        beta = lg->beta;
        alpha = lg->alpha;
        delta = 0.5;
        return true;
    }
    if (const auto* sp = std::get_if<SubordinatorPower>(&sub)) {
        beta = sp->beta;
        alpha = sp->alpha;
        delta = sp->delta;
        return true;
    }
    return false;
}

// Density of B_{Gamma}: closed Bessel-K form for the power family, quadrature
// of the subordination integral otherwise.
double subordinated_density(const SubordinatedBm& model, double x) {
    double beta, alpha, delta;
    if (power_family(model.subordinator, beta, alpha, delta)) {
        const double ax = std::abs(x);
        const double t = std::sqrt(2.0 * alpha) * ax;
        return 2.0 * beta / std::sqrt(2.0 * M_PI) * bessel_k(delta - 1.0, t) *
               std::pow(ax / std::sqrt(2.0 * alpha), delta - 1.0);
    }
    // gamma-space integral: exp(-x^2/(2 gamma)) / sqrt(2 pi gamma) * n_Gamma(gamma)
    const auto integrand = [&](double g) -> double {
        if (g <= 0.0)
            return 0.0;
        return std::exp(-x * x / (2.0 * g)) / std::sqrt(2.0 * M_PI * g) *
               subordinator_levy_density(model.subordinator, g);
    };
    double upper = 1.0;
    while (subordinator_levy_density(model.subordinator, upper) > 1e-18 && upper < 1e6)
        upper *= 2.0;
    return integrate(integrand, 0.0, upper, 1e-13);
}

} // namespace

double levy_density(const ModelSpec& model, double x) {
    if (x == 0.0)
        throw std::domain_error("levy_density: x = 0 is outside the domain");
    return std::visit([&](const auto& j) -> double {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, NoJumps>) {
            return 0.0;
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
            return j.intensity * jump_pdf(j.law, x);
        } else if constexpr (std::is_same_v<T, LevyGamma>) {
            return x > 0.0 ? j.beta * std::exp(-j.alpha * x) / x : 0.0;
        } else if constexpr (std::is_same_v<T, BilateralGamma>) {
            if (x > 0.0)
                return j.beta * std::exp(-j.alpha * x) / x;
            return j.beta2 * std::exp(-j.alpha2 * (-x)) / (-x);
        } else if constexpr (std::is_same_v<T, SubordinatorPower>) {
            return x > 0.0
                       ? j.beta * std::pow(x, j.delta - 1.5) * std::exp(-j.alpha * x)
                       : 0.0;
        } else {
            return subordinated_density(j, x);
        }
    }, model.jumps);
}

double true_target_at(const ModelSpec& model, Target target, double x) {
    if (x == 0.0)
        return 0.0; // continuous extension
    double xp = x;
    for (int p = 1; p < target_power(target); ++p)
        xp *= x;
    return xp * levy_density(model, x);
}

Eigen::ArrayXd true_target(const ModelSpec& model, Target target,
                           const Eigen::ArrayXd& x) {
    Eigen::ArrayXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out[i] = true_target_at(model, target, x[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Fourier transforms of the targets
// ---------------------------------------------------------------------------

namespace {

using Cplx = std::complex<double>;

// FT of x^l f(x) for Gaussian f: derivatives of exp(i mu u - s^2 u^2 / 2).
Cplx gaussian_target_ft(const GaussianJump& g, int ell, double u) {
    const Cplx A(-g.sd * g.sd * u, g.mean);
    const Cplx f = std::exp(Cplx(-0.5 * g.sd * g.sd * u * u, g.mean * u));
    const double s2 = g.sd * g.sd;
    switch (ell) {
    case 1:
        return Cplx(0.0, -1.0) * A * f;
    case 2:
        return (s2 - A * A) * f;
    case 3:
        return Cplx(0.0, 1.0) * (A * A * A - 3.0 * s2 * A) * f;
    default:
        throw std::invalid_argument("gaussian_target_ft: ell must be 1..3");
    }
}

// FT of x^l f(x) for Exponential(rate) f: rate * l! / (rate - iu)^{l+1}.
Cplx exponential_target_ft(const ExponentialJump& e, int ell, double u) {
    const Cplx d(e.rate, -u);
    return e.rate * std::tgamma(ell + 1.0) / std::pow(d, ell + 1);
}

// beta Gamma(s) / (alpha - iu)^s.
Cplx gamma_tail_ft(double beta, double alpha, double s, double u) {
    const Cplx d(alpha, -u);
    return beta * std::tgamma(s) * std::exp(-s * std::log(d));
}

Cplx subordinated_target_ft(double beta, double alpha, double delta, int ell, double u) {
    const double q = alpha + 0.5 * u * u;
    auto mom = [&](double order) { // int gamma^order n_Gamma(gamma) e^{-gamma u^2/2} dgamma
        return beta * std::tgamma(order + delta - 0.5) *
               std::pow(q, -(order + delta - 0.5));
    };
    switch (ell) {
    case 1:
        return Cplx(0.0, u * mom(1.0));
    case 2:
        return Cplx(mom(1.0) - u * u * mom(2.0), 0.0);
    case 3:
        return Cplx(0.0, -(u * u * u * mom(3.0) - 3.0 * u * mom(2.0)));
    default:
        throw std::invalid_argument("subordinated_target_ft: ell must be 1..3");
    }
}

Cplx closed_form_fourier(const JumpPart& jumps, int ell, double u, bool& ok) {
    ok = true;
    return std::visit([&](const auto& j) -> Cplx {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, NoJumps>) {
            return Cplx(0.0, 0.0);
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
            if (const auto* g = std::get_if<GaussianJump>(&j.law))
                return j.intensity * gaussian_target_ft(*g, ell, u);
            if (const auto* e = std::get_if<ExponentialJump>(&j.law))
                return j.intensity * exponential_target_ft(*e, ell, u);
            ok = false;
            return Cplx(0.0, 0.0);
        } else if constexpr (std::is_same_v<T, LevyGamma>) {
            return gamma_tail_ft(j.beta, j.alpha, ell, u);
        } else if constexpr (std::is_same_v<T, BilateralGamma>) {
            const Cplx up = gamma_tail_ft(j.beta, j.alpha, ell, u);
            const Cplx down = gamma_tail_ft(j.beta2, j.alpha2, ell, -u);
            return (ell % 2 == 0) ? up + down : up - down;
        } else if constexpr (std::is_same_v<T, SubordinatorPower>) {
            return gamma_tail_ft(j.beta, j.alpha, ell + j.delta - 0.5, u);
        } else {
            double beta, alpha, delta;
            if (power_family(j.subordinator, beta, alpha, delta))
                return subordinated_target_ft(beta, alpha, delta, ell, u);
            ok = false;
            return Cplx(0.0, 0.0);
        }
    }, jumps);
}

// Trapezoid FT of the x-space target over [-40, 40]; the default models are
// below 1e-12 outside that window.
Cplx numerical_fourier(const ModelSpec& model, Target target, double u) {
    constexpr Eigen::Index kPoints = (1 << 16) + 1;
    constexpr double kLim = 40.0;
    const double dx = 2.0 * kLim / (kPoints - 1);
    double re = 0.0, im = 0.0;
    for (Eigen::Index j = 0; j < kPoints; ++j) {
        const double x = -kLim + j * dx;
        const double f = true_target_at(model, target, x);
        if (f == 0.0)
            continue;
        const double w = (j == 0 || j == kPoints - 1) ? 0.5 : 1.0;
        re += w * f * std::cos(u * x);
        im += w * f * std::sin(u * x);
    }
    return Cplx(re * dx, im * dx);
}

} // namespace

bool has_closed_form_fourier(const ModelSpec& model) {
    bool ok = true;
    (void)closed_form_fourier(model.jumps, 2, 0.3, ok);
    return ok;
}

std::complex<double> true_fourier_at(const ModelSpec& model, Target target, double u) {
    bool ok = true;
    const Cplx v = closed_form_fourier(model.jumps, target_power(target), u, ok);
    if (ok)
        return v;
    return numerical_fourier(model, target, u);
}

Eigen::ArrayXcd true_fourier(const ModelSpec& model, Target target,
                             const Eigen::ArrayXd& u) {
    Eigen::ArrayXcd out(u.size());
    for (Eigen::Index i = 0; i < u.size(); ++i)
        out[i] = true_fourier_at(model, target, u[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

namespace {

double law_raw_moment(const JumpLaw& law, int ell) {
    return std::visit([ell](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, GaussianJump>) {
            // m_l = mu m_{l-1} + (l-1) s^2 m_{l-2}
            double prev = 1.0, cur = l.mean;
            if (ell == 0)
                return 1.0;
            for (int k = 2; k <= ell; ++k) {
                const double next = l.mean * cur + (k - 1) * l.sd * l.sd * prev;
                prev = cur;
                cur = next;
            }
            return cur;
        } else if constexpr (std::is_same_v<T, ExponentialJump>) {
            return std::tgamma(ell + 1.0) / std::pow(l.rate, ell);
        } else {
            // E (lo + w B)^l with B ~ Beta(a, b)
            const double w = l.hi - l.lo;
            double total = 0.0;
            double binom = 1.0;
            for (int k = 0; k <= ell; ++k) {
                double beta_moment = 1.0;
                for (int j = 0; j < k; ++j)
                    beta_moment *= (l.a + j) / (l.a + l.b + j);
                total += binom * std::pow(l.lo, ell - k) * std::pow(w, k) * beta_moment;
                binom = binom * (ell - k) / (k + 1.0);
            }
            return total;
        }
    }, law);
}

double subordinator_moment(const Subordinator& sub, double order) {
    return std::visit([order](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, CompoundPoisson>) {
            const int k = static_cast<int>(order);
            if (static_cast<double>(k) != order)
                throw std::invalid_argument("subordinator_moment: non-integer order");
            return s.intensity * law_raw_moment(s.law, k);
        } else if constexpr (std::is_same_v<S, LevyGamma>) {
            return s.beta * std::tgamma(order) / std::pow(s.alpha, order);
        } else {
            return s.beta * std::tgamma(order + s.delta - 0.5) /
                   std::pow(s.alpha, order + s.delta - 0.5);
        }
    }, sub);
}

double double_factorial_odd(int ell) { // (ell-1)!! for even ell
    double v = 1.0;
    for (int k = ell - 1; k > 1; k -= 2)
        v *= k;
    return v;
}

} // namespace

double levy_moment(const JumpPart& jumps, int ell) {
    if (ell < 1)
        throw std::invalid_argument("levy_moment: ell must be >= 1");
    return std::visit([ell](const auto& j) -> double {
        using T = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<T, NoJumps>) {
            return 0.0;
        } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
            return j.intensity * law_raw_moment(j.law, ell);
        } else if constexpr (std::is_same_v<T, LevyGamma>) {
            return j.beta * std::tgamma(static_cast<double>(ell)) /
                   std::pow(j.alpha, ell);
        } else if constexpr (std::is_same_v<T, BilateralGamma>) {
            const double up = j.beta * std::tgamma(static_cast<double>(ell)) /
                              std::pow(j.alpha, ell);
            const double down = j.beta2 * std::tgamma(static_cast<double>(ell)) /
                                std::pow(j.alpha2, ell);
            return (ell % 2 == 0) ? up + down : up - down;
        } else if constexpr (std::is_same_v<T, SubordinatorPower>) {
            return j.beta * std::tgamma(ell + j.delta - 0.5) /
                   std::pow(j.alpha, ell + j.delta - 0.5);
        } else {
            if (ell % 2 == 1)
                return 0.0; // symmetric
            return double_factorial_odd(ell) *
                   subordinator_moment(j.subordinator, 0.5 * ell);
        }
    }, jumps);
}

TrueMoments true_moments(const ModelSpec& model) {
    TrueMoments out;
    out.b = model.drift_b0 + levy_moment(model.jumps, 1);
    out.c2 = model.sigma * model.sigma + levy_moment(model.jumps, 2);
    out.c3 = levy_moment(model.jumps, 3);
    out.c4 = levy_moment(model.jumps, 4);
    out.c6 = levy_moment(model.jumps, 6);
    return out;
}

} // namespace levy
