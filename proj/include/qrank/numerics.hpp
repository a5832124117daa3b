#pragma once
// Floating-point evaluation of the Appell-Lerch completion and its building
// blocks.  The exact-series layer is verified against these evaluations
// through the analytic transformation laws (elliptic and modular), the eta
// multiplier, and the holomorphic/nonholomorphic cusp decomposition.

#include <complex>
#include <stdexcept>

#include "qrank/appell.hpp"
#include "qrank/pseries.hpp"

namespace qrank {

using Cx = std::complex<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct NearPole : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// int_x^inf u^{-1/2} e^{-pi u} du for x >= 0, in closed form and by
// adaptive quadrature of the defining integral
double eval_beta(double x);
double eval_beta_quadrature(double x);

// 2 int_0^z e^{-pi u^2} du, in closed form and by adaptive quadrature
double eval_E(double z);
double eval_E_quadrature(double z);

// odd half-integral theta: sum_{nu in 1/2+Z} e^{pi i nu^2 tau + 2 pi i nu (z + 1/2)}
Cx eval_theta(Cx z, Cx tau);

// nonholomorphic partner series
//   sum_{nu in 1/2+Z} {sgn(nu) - E((nu + Im u/Im tau) sqrt(2 Im tau))}
//                     (-1)^{nu-1/2} q^{-nu^2/2} e^{-2 pi i nu u}
Cx eval_R(Cx u, Cx tau);

// level-ell Appell-Lerch sum a^{ell/2} sum_n (-1)^{ell n} q^{ell n(n+1)/2}/(1 - a q^n);
// throws NearPole when u sits too close to the lattice poles
Cx eval_A(long ell, Cx u, Cx tau);

// modular completion A_ell + (i/2) sum_{m<ell} e^{2 pi i m u}
//   theta(m tau + (ell-1)/2; ell tau) R(ell u - m tau - (ell-1)/2; ell tau)
Cx eval_Ahat(long ell, Cx u, Cx tau);

// Dedekind eta q^{1/24} prod (1 - q^n)
Cx eval_eta(Cx tau);

// sum of coef * e^{2 pi i e tau} over the known terms of f
Cx eval_pseries(const PSeries& f, Cx tau);

// (a tau + b)/(c tau + d)
Cx moebius(const Mat2& g, Cx tau);

// nonholomorphic part of (1/2 pi i) e^{-pi i ell c d x^2} dAhat_ell(-x)|_2 gamma:
//   -(1/2 pi) sum_{n,m} (-1)^{ell n} e^{2 pi i d x (ell(n-cx) - (m+ell/2))}
//     f(ell(n-cx) - (m+ell/2); Im tau) q^{-(ell/2)(n-cx)^2 + (n-cx)(m+ell/2)}
// with f(t; y) = pi |t| beta(2 t^2 y / ell) - e^{-2 pi t^2 y / ell} sqrt(ell/(2y))
Cx eval_dahat_nonholo(long ell, const Rat& x, const Mat2& g, Cx tau);

} // namespace qrank
