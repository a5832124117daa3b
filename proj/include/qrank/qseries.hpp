#pragma once

// Classical q-series building blocks: Pochhammer products, eta quotient
// pieces, Jacobi theta with rational characteristics, E2, and the universal
// mock theta function g.  Everything returns a PSeries truncated below a
// caller-chosen exponent E.

#include "qrank/pseries.hpp"

#include <vector>

namespace qrank {

// A factor (1 - zeta q^e) hit a zero: the requested object degenerates.
struct DegeneratePole : std::runtime_error {
    explicit DegeneratePole(const std::string& what) : std::runtime_error(what) {}
};

// (1 - zeta q^e) as an exact series.  For e < 0 the factor is rewritten as
// -zeta q^e (1 - zeta^{-1} q^{-e}) so the result is again a Laurent
// polynomial; for e = 0 it is the constant 1 - zeta, which must not vanish.
PSeries one_minus(const Coef& zeta, const Rat& e);

// prod_{j=0}^{count-1} (1 - zeta q^{offset + j step}); count < 0 means the
// infinite product, truncated below E (factors with exponent >= E are 1
// there).  step must be positive for infinite products.
PSeries poch(const Coef& zeta, const Rat& offset, const Rat& step, long count, const Rat& E);

// pure-q convenience: prod over offsets of (q^{offset}; q^{step})_inf
PSeries poch_inf(const std::vector<Rat>& offsets, const Rat& step, const Rat& E);

// J_k = (q^k; q^k)_inf
PSeries euler_prod(long k, const Rat& E);

// J_{k,a} = (q^a, q^{k-a}, q^k; q^k)_inf
PSeries theta_prod(long k, long a, const Rat& E);

// Eta-quotient factor in exponent-shift form: q^{e0} * prod (q^{o}; q^{s})_inf.
struct EtaSpec {
    Rat e0;
    std::vector<std::pair<Rat, Rat>> factors; // (offset, step)

    // q^{ m/24 } (q^m; q^m)_inf  -- eta(m tau) with q = e^{2 pi i tau}
    static EtaSpec classic(long m);
    // q^{ (p/2) P2(d/p) } (q^d; q^p)_inf (q^{p-d}; q^p)_inf with
    // P2(x) = x^2 - x + 1/6; the generalized eta function for 0 < d < p.
    static EtaSpec generalized(long p, long d);
};

PSeries eta_expand(const EtaSpec& spec, const Rat& E);

// Jacobi theta of characteristic v = r (mult tau) + s:
//   theta(v; mult tau) = sum_{j in Z} e^{pi i (j+1/2)^2 mult tau
//                         + 2 pi i (j+1/2)(v + 1/2)}
// computed from the triple-product form
//   -i e^{-pi i s} q^{mult(1/8 - r/2)} prod_{n>=1} (1-q^{mult n})
//       (1 - zs q^{mult(n-1+r)}) (1 - zs^{-1} q^{mult(n-r)}),  zs = e^{2 pi i s}.
// Throws DegeneratePole when v lies in Z mult tau + Z (theta vanishes).
PSeries theta_char(const Rat& r, const Rat& s, long mult, const Rat& E);

// The defining sum, kept as an independent cross-check of theta_char.
PSeries theta_char_sum(const Rat& r, const Rat& s, long mult, const Rat& E);

// E2(tau) = 1 - 24 sum sigma_1(n) q^n
PSeries e2_expand(const Rat& E);

// g(q^a, q^b) = q^{-a} (-1 + sum_{n>=0} q^{b n^2} /
//               ((q^a; q^b)_{n+1} (q^{b-a}; q^b)_n)),  0 < a < b
PSeries mocktheta_g(long a, long b, const Rat& E);

} // namespace qrank
