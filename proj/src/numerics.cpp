#include "qrank/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <variant>

namespace qrank {

namespace {

const double PI = std::acos(-1.0);
const Cx IU(0.0, 1.0);

double simpson(double (*f)(double), double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double integrate(double (*f)(double), double a, double b, double tol) {
    double fa = f(a);
    double fb = f(b);
    double fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double beta_shift;

double beta_integrand(double s) {
    double u = beta_shift + s;
    return std::exp(-PI * u) / std::sqrt(u);
}

double gauss_integrand(double u) { return std::exp(-PI * u * u); }

double imag_strict(Cx tau) {
    double t = tau.imag();
    if (!(t > 0.0))
        throw DomainError("tau must lie in the upper half plane");
    return t;
}

// summation radius for terms of magnitude e^{-pi t ((nu+a)^2 - a^2)}
long cutoff(double t, double a) {
    double r = std::fabs(a) + std::sqrt(a * a + 50.0 / (PI * t));
    return static_cast<long>(std::ceil(r)) + 2;
}

double rat_d(const Rat& r) { return r.get_d(); }

} // namespace

double eval_beta(double x) {
    if (x < 0.0)
        throw DomainError("beta integral requires x >= 0");
    return std::erfc(std::sqrt(PI * x));
}

double eval_beta_quadrature(double x) {
    if (x < 1e-12)
        throw DomainError("quadrature route requires x > 0 (integrand has a "
                          "u^{-1/2} singularity at the origin)");
    beta_shift = x;
    return integrate(beta_integrand, 0.0, 18.0, 1e-15);
}

double eval_E(double z) { return std::erf(std::sqrt(PI) * z); }

double eval_E_quadrature(double z) {
    double v = 2.0 * integrate(gauss_integrand, 0.0, std::fabs(z), 1e-15);
    return z < 0.0 ? -v : v;
}

Cx eval_theta(Cx z, Cx tau) {
    double t = imag_strict(tau);
    long N = cutoff(t, z.imag() / t);
    Cx acc(0.0, 0.0);
    for (long n = -N - 1; n <= N; ++n) {
        double nu = n + 0.5;
        acc += std::exp(PI * IU * nu * nu * tau + 2.0 * PI * IU * nu * (z + 0.5));
    }
    return acc;
}

Cx eval_R(Cx u, Cx tau) {
    double t = imag_strict(tau);
    double a = u.imag() / t;
    long N = cutoff(t, a);
    Cx acc(0.0, 0.0);
    for (long n = -N - 1; n <= N; ++n) {
        double nu = n + 0.5;
        double sgn = nu > 0.0 ? 1.0 : -1.0;
        double frac = sgn - eval_E((nu + a) * std::sqrt(2.0 * t));
        double par = (n % 2 == 0) ? 1.0 : -1.0;
        acc += frac * par * std::exp(-PI * IU * nu * nu * tau - 2.0 * PI * IU * nu * u);
    }
    return acc;
}

Cx eval_A(long ell, Cx u, Cx tau) {
    double t = imag_strict(tau);
    double b = u.imag();
    long N = cutoff(ell * t, b / (ell * t)) + 2;
    Cx acc(0.0, 0.0);
    for (long n = -N; n <= N; ++n) {
        Cx denom = 1.0 - std::exp(2.0 * PI * IU * (u + static_cast<double>(n) * tau));
        if (std::abs(denom) < 1e-10)
            throw NearPole("argument too close to a lattice pole");
        double par = (ell * n) % 2 == 0 ? 1.0 : -1.0;
        Cx numer = par * std::exp(PI * IU * static_cast<double>(ell * n * (n + 1)) * tau);
        acc += numer / denom;
    }
    return std::exp(PI * IU * static_cast<double>(ell) * u) * acc;
}

Cx eval_Ahat(long ell, Cx u, Cx tau) {
    Cx acc = eval_A(ell, u, tau);
    double half = (ell - 1) / 2.0;
    for (long m = 0; m < ell; ++m) {
        Cx theta = eval_theta(static_cast<double>(m) * tau + half,
                              static_cast<double>(ell) * tau);
        Cx r = eval_R(static_cast<double>(ell) * u - static_cast<double>(m) * tau - half,
                      static_cast<double>(ell) * tau);
        acc += 0.5 * IU * std::exp(2.0 * PI * IU * static_cast<double>(m) * u) * theta * r;
    }
    return acc;
}

Cx eval_eta(Cx tau) {
    double t = imag_strict(tau);
    Cx q = std::exp(2.0 * PI * IU * tau);
    Cx acc = std::exp(PI * IU * tau / 12.0);
    Cx qn(1.0, 0.0);
    long nmax = static_cast<long>(std::ceil(46.0 / (2.0 * PI * t))) + 4;
    for (long n = 1; n <= nmax; ++n) {
        qn *= q;
        acc *= 1.0 - qn;
    }
    return acc;
}

Cx eval_pseries(const PSeries& f, Cx tau) {
    imag_strict(tau);
    Cx acc(0.0, 0.0);
    long N = f.denom();
    for (const auto& [key, coef] : f.raw_terms()) {
        Cx c = std::holds_alternative<Rat>(coef)
                   ? Cx(rat_d(std::get<Rat>(coef)), 0.0)
                   : std::get<Cyc>(coef).to_complex();
        acc += c * std::exp(2.0 * PI * IU * tau * (static_cast<double>(key) / N));
    }
    return acc;
}

Cx moebius(const Mat2& g, Cx tau) {
    return (static_cast<double>(g.a) * tau + static_cast<double>(g.b)) /
           (static_cast<double>(g.c) * tau + static_cast<double>(g.d));
}

Cx eval_dahat_nonholo(long ell, const Rat& x, const Mat2& g, Cx tau) {
    double t = imag_strict(tau);
    double xd = rat_d(x);
    double cx = g.c * xd;
    double dx = g.d * xd;
    // f(T; t) decays like e^{-2 pi T^2 t / ell}; the q-power contributes
    // e^{2 pi t ((ell/2) nu^2 - nu mu)} with nu = n - cx, mu = m + ell/2, and
    // the combined exponent is -2 pi t ((ell/2)(nu - mu/ell)^2 + mu^2/(2 ell))
    double mcut = std::sqrt(50.0 * ell / (PI * t)) + 3.0;
    double ncut = std::sqrt(50.0 / (PI * ell * t)) + 3.0;
    Cx acc(0.0, 0.0);
    long mlo = static_cast<long>(std::floor(-ell / 2.0 - mcut));
    long mhi = static_cast<long>(std::ceil(-ell / 2.0 + mcut));
    for (long m = mlo; m <= mhi; ++m) {
        double mu = m + ell / 2.0;
        long nlo = static_cast<long>(std::floor(cx + mu / ell - ncut));
        long nhi = static_cast<long>(std::ceil(cx + mu / ell + ncut));
        for (long n = nlo; n <= nhi; ++n) {
            double nu = n - cx;
            double T = ell * nu - mu;
            double fT = PI * std::fabs(T) * eval_beta(2.0 * T * T * t / ell) -
                        std::exp(-2.0 * PI * T * T * t / ell) * std::sqrt(ell / (2.0 * t));
            double par = (ell * n) % 2 == 0 ? 1.0 : -1.0;
            Cx phase = std::exp(2.0 * PI * IU * dx * T);
            Cx qpow = std::exp(2.0 * PI * IU * tau *
                               (-0.5 * ell * nu * nu + nu * mu));
            acc += par * phase * fT * qpow;
        }
    }
    return -acc / (2.0 * PI);
}

} // namespace qrank
