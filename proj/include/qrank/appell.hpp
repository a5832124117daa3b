#pragma once

// Appell sums of level ell, their u-derivatives, the q-expansion of the
// holomorphic part of the derivative at an arbitrary cusp, exact cusp-order
// formulas, and the bilateral Lambert-type blocks built from them that enter
// the rank/crank dissection identities.

#include "qrank/pseries.hpp"

namespace qrank {

// The point alpha*tau + beta, so e^{2 pi i (alpha*tau+beta)} = zeta q^alpha
// with zeta = e^{2 pi i beta}.
struct TauChar {
    Rat alpha{0};
    Rat beta{0};
};

// Integer matrix (a b; c d), det must be 1 where a group element is required.
struct Mat2 {
    long a{1}, b{0}, c{0}, d{1};
    long det() const { return a * d - b * c; }
};

// A_ell(u, v; mult*tau) = a^{ell/2} sum_{n in Z} (-1)^{ell n} Q^{ell n(n+1)/2} b^n / (1 - a Q^n)
// with Q = q^mult, a = e^{2 pi i u}, b = e^{2 pi i v}, as an exact q-series
// complete below `bound`.  Throws DegeneratePole if some factor 1 - a Q^n
// vanishes identically.
PSeries appell_A(long ell, const TauChar& u, const TauChar& v, long mult, const Rat& bound);

// (1/2 pi i) d/du of the same sum, evaluated at the characteristic u.
PSeries appell_dA(long ell, const TauChar& u, const TauChar& v, long mult, const Rat& bound);

// Holomorphic part, as a q-series at the cusp g^{-1}(i infinity), of
// (1/2 pi i) e^{-pi i ell c d x^2} (d/du|_0 Ahat_ell(u - x; tau)) |_2 g.
// Requires x > 0 nonintegral rational, det(g) = 1, g.c >= 0.
PSeries dahat_holo_at_cusp(long ell, const Rat& x, const Mat2& g, const Rat& bound);

// Exact order at the cusp a/c of the holomorphic part above; depends only on
// the denominator c of the cusp.
Rat ord_dahat_cusp(long ell, const Rat& x, long c);

// Order at the cusp a/c (a, c >= 0 coprime, c = 0 meaning i infinity) of the
// weight-2 combination  q^{-ell x^2/2} (dAhat_ell(x tau; tau) - 2 pi i ell x Ahat_ell(x tau; tau))
// rescaled by tau -> k tau.
Rat ord_weight2_comb_cusp(long ell, const Rat& x, long k, long a, long c);

// Bilateral Lambert block attached to the residue v mod p:
//   v != 0:  head + ((-1)^v/(q^p;q^p)_inf) * ( p sum_n (-1)^n q^{3pn(n+1)/2}/(1-q^{pn+v})^2
//            + (p/2-3v) sum_n (-1)^n q^{3pn(n+1)/2}/(1-q^{pn+v}) )
//   v == 0:  (p/(q^p;q^p)_inf) * ( sum_{n!=0} (-1)^n q^{3pn(n+1)/2}/(1-q^{pn})^2
//            + 3 sum_{n>=1} n q^{pn}/(1-q^{pn}) - 1/12 )
PSeries lambert_block(long p, long v, const Rat& bound);

// The finite head of the block: a single monomial when v is within p/6 of 0
// or p, zero otherwise.
PSeries lambert_head(long p, long v);

// Central exponent shift sigma = (3v(p-v) - 2 s_p)/(2p) with s_p = (p^2-1)/24.
Rat lambert_centering(long p, long v);

// The same block computed through the Appell route:
//   v != 0:  (-1)^v q^{(-3v^2-2s_p)/(2p)}/(q^p;q^p)_inf *
//            ( p * (1/2 pi i) d/du A_3(u + v tau; p tau)|_0 - 3v A_3(v tau; p tau) )
//   v == 0:  p q^{-s_p/p}/(q^p;q^p)_inf *
//            ( (1/2 pi i) d/du (A_3(u; p tau) - e^{3 pi i u}/(1-e^{2 pi i u}))|_0
//              - E_2(p tau)/8 - 11/24 )
// Satisfies q^sigma * (lambert_block - lambert_head) = lambert_block_centered.
PSeries lambert_block_centered(long p, long v, const Rat& bound);

// q^sigma * lambert_head, the finite correction between the centered block
// and q^sigma times the full block.
PSeries lambert_head_centered(long p, long v);

// Appell-side kernel of the rank parts difference for residue s mod p:
//   delta_{s,1}/2 + sum_{j=1}^{p-1} zeta_p^{j(s-1/2)} (1-zeta_p^j)/(2 p pi i (q;q)_inf)
//                   * d/du A_3(u - j/p; tau)|_0 .
// All cyclotomic contributions cancel; the result is rational.
PSeries rank_parts_kernel(long p, long s, const Rat& bound);

// Appell-side kernel of the crank ones difference for residue s mod p:
// the same sum with the level-one series and no constant term,
//   sum_{j=1}^{p-1} zeta_p^{j(s-1/2)} (1-zeta_p^j)/(2 p pi i (q;q)_inf)
//                   * d/du A_1(u - j/p; tau)|_0 .
PSeries crank_parts_kernel(long p, long s, const Rat& bound);

}  // namespace qrank
