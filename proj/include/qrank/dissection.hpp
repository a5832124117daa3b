#pragma once
// Dissection of the rank-parts and crank-ones difference series into residue
// classes mod p, and extraction of the remainder that becomes a weight-zero
// modular function on Gamma_1(p) after multiplication by a fixed theta
// quotient.  Two independent routes compute the same remainder: one from
// partition statistics tables plus the explicit Lambert-type block, one from
// the Appell-Lerch kernel plus the centered block.

#include <map>
#include <stdexcept>

#include "qrank/modular.hpp"
#include "qrank/pseries.hpp"

namespace qrank {

// +1 when p = +-1 mod 12, -1 when p = +-5 mod 12
int chi12(long p);

// (p^2 - 1)/24 for p coprime to 6
long s_const(long p);

// Lambert-type block split off from the dissected series.  sign is the
// coefficient of chi12(p) q^c L_p(v); sign = 0 means no block occurs.
struct LambertCase {
    int sign = 0;
    long v = 0;
    Rat c;
};

// Block selection for the rank side at residue pair (s, k):
//   6k + s^2 - s = 0 mod p  ->  sign +1, v solves 2(s-1) + 6v + 1 = 0 mod p
//   6k + s^2 + s = 0 mod p  ->  sign -1, v solves 2s + 6v + 1 = 0 mod p
// with c = 3v(p-v)/(2p) - (k + s_const(p))/p.
LambertCase lambert_case(long p, long s, long k);

// q^{-k/p} U_{p,k} f: the coefficients of f on exponents = k mod p,
// reindexed as a series in q
PSeries dissect(const PSeries& f, long p, long k);

enum class Route { enumeration, kernel };

// Remainder of the dissected rank-parts difference once the weighted rank
// deviations and the explicit Lambert block are removed:
//   sum_n [NT(s,p,pn+k) - NT(p-s,p,pn+k)] q^n
//     - sum_{r=1}^{p-1} (p-2r)/(2p) sum_n [N(r-s,p,pn+k) - p(pn+k)/p] q^n
//     - sign chi12(p) q^c L_p(v).
// Route::enumeration builds the statistic tables and the Lambert block
// directly; Route::kernel dissects the Appell-Lerch kernel and removes the
// centered block.  Both give series complete strictly below E.
PSeries rank_parts_remainder(long p, long s, long k, const Rat& E, Route route);

// Crank-side analogue (ones per crank class against crank deviations);
// no Lambert block occurs on this side.
PSeries crank_ones_remainder(long p, long s, long k, const Rat& E, Route route);

// Theta-quotient prefactor making the remainders weight-zero modular:
//   J_{p,1}^2 / (q J_p^5) * (J_{p,(p-1)/2} / J_{p,(p-3)/2})^{k + s_const(p) + 1}
PSeries modular_prefactor(long p, long k, const Rat& E);

// Hauptmodul of X_1(p) for the genus-zero levels p = 5, 7, as a generalized
// eta quotient with integer q-expansion, valuation 1, leading coefficient 1
EtaQuotient t_quotient(long p);
PSeries t_series(long p, const Rat& E);

struct FitFailed : std::runtime_error {
    Rat exponent;
    explicit FitFailed(const Rat& e)
        : std::runtime_error("no Laurent polynomial in t matches; residual starts at q^" +
                             rat_str(e)),
          exponent(e) {}
};

// Write a bounded series as a Laurent polynomial in t with exponents in
// [lo, hi].  The triangular solve peels coefficients from the lowest
// exponent up; a nonzero residual below the series bound throws FitFailed.
std::map<long, Rat> t_poly_fit(const PSeries& f, long p, long lo, long hi);

// Expand a Laurent polynomial in t, complete strictly below E
PSeries t_poly_expand(const std::map<long, Rat>& poly, long p, const Rat& E);

} // namespace qrank
