#pragma once

// Gamma_1(p) machinery for odd prime p: cusp classes with widths, exact
// orders of classic and generalized eta factors at cusps, their multiplier
// systems as exact roots of unity, the progression-extraction operators
// U_{p,k} and U'_{p,k}, and the valence-formula bound that turns an
// identity of modular functions into a finite coefficient comparison.

#include "qrank/appell.hpp"
#include "qrank/pseries.hpp"

#include <map>
#include <vector>

namespace qrank {

struct NotInGroup : std::runtime_error {
    explicit NotInGroup(const std::string& what) : std::runtime_error(what) {}
};

struct ExponentDomain : std::runtime_error {
    explicit ExponentDomain(const std::string& what) : std::runtime_error(what) {}
};

// Cusp class of Gamma_1(p).  Representatives:
//   p/c for 1 <= c <= (p-1)/2 (width p) and a/p for 1 <= a <= (p-1)/2
// (width 1); i-infinity falls in the class of 1/p.
struct CuspClass {
    long p = 0;
    long a = 0;      // numerator
    long c = 0;      // denominator, gcd(a, c) = 1
    long width = 0;  // p / gcd(c, p)

    friend bool operator==(const CuspClass& x, const CuspClass& y) {
        return x.p == y.p && x.a == y.a && x.c == y.c;
    }
    friend bool operator<(const CuspClass& x, const CuspClass& y) {
        if (x.p != y.p) return x.p < y.p;
        if (x.c != y.c) return x.c < y.c;
        return x.a < y.a;
    }
    std::string str() const { return std::to_string(a) + "/" + std::to_string(c); }
};

std::vector<CuspClass> cusp_set(long p);

// Reduce any cusp a/c with gcd(a, c) = 1 (c = 0 meaning i-infinity) to its
// representative above.  Cusps a1/c1 and a2/c2 are equivalent exactly when
// for some sign e: c1 = e c2 (mod p) and a1 = e a2 (mod gcd(p, c1)).
CuspClass cusp_normalize(long p, long a, long c);
bool cusp_equiv(long p, long a1, long c1, long a2, long c2);

// Order at the cusp a/c (gcd(a, c) = 1) of the generalized eta function
// eta_{p,delta} = q^{(p/2) P2(delta/p)} (q^delta, q^{p-delta}; q^p)_inf:
//   ((p,c)^2 / 2p) * P2bar(a delta / (p,c)),
// with P2 the second Bernoulli polynomial and P2bar its periodization.
Rat ord_geta(long p, long delta, long a, long c);

// Order at a/c of eta(m tau): gcd(m, c)^2 / (24 m).
Rat ord_eta_scaled(long m, long a, long c);

// One eta-type factor raised to an integer power.  delta == 0 selects the
// classic eta(m tau); 0 < delta < m selects eta_{m,delta}.
struct EtaFactor {
    long m = 1;
    long delta = 0;
    long power = 1;
};
using EtaQuotient = std::vector<EtaFactor>;

PSeries eta_quotient_expand(const EtaQuotient& fs, const Rat& E);
Rat ord_eta_quotient(const EtaQuotient& fs, long a, long c);

// Per-cusp divisors div_{a/c} = width * ord_{a/c} of an eta quotient viewed
// on Gamma_1(p), plus a lower bound for the interior divisor (0 here: eta
// products are nonvanishing on the upper half plane).
struct DivisorLedger {
    long p = 0;
    std::map<CuspClass, Rat> div;
    Rat interior = Rat(0);
    Rat total() const;
};

DivisorLedger eta_div_ledger(const EtaQuotient& fs, long p);

// Dedekind eta multiplier in eta(g tau) = chi_eta(g) (c tau + d)^{1/2} eta(tau)
// with the principal square root; exact value in Q(zeta_24).
Cyc chi_eta(const Mat2& g);

// Multiplier of eta_{p,delta} on Gamma_1(p):
//   chi_eta^2(a, pb; c/p, d) e^{pi i a b delta^2 / p} (-1)^{(a-1)delta/p + b delta}.
// Throws NotInGroup unless p | c and a = d = 1 (mod p).
Cyc chi_geta(long p, long delta, const Mat2& g);

// U_{p,k}: from sum a(e) q^e keep exponents e = k (mod p) and map
// q^e -> q^{e/p}.  Exponents must be integers (ExponentDomain otherwise).
PSeries Upk(const PSeries& f, long p, long k);

// U'_{p,k}: same rescaling, keeping exponents with e - k - (p-1)/24 in pZ.
// Exponents must lie in (1/24) Z.
PSeries Upk_prime(const PSeries& f, long p, long k);

// U'_{p,k} computed literally from its definition as the average
//   (1/p) sum_m zeta_{24p}^{-m(p-1)} zeta_p^{-mk} f((tau + m)/p),
// kept as an independent cross-check of the selection rule.
PSeries Upk_prime_average(const PSeries& f, long p, long k);

// 12 sum_delta r_delta delta^2 = -24k + 1 (mod p)?
bool rv_condition(long p, long k, const std::map<long, long>& r);

// Valence bound: with s_p = (p^2 - 1)/24 and caller-supplied pole orders
// e_{a/c} of the comparison series, coefficient agreement up to
//   n1 = sum_{c=1}^{(p-1)/2} max(s_p, e_{p/c})
//      + sum_{a=2}^{(p-1)/2} max((k + s_p + 3) p / 8, e_{a/p})
// forces equality.  Cusps absent from the map contribute e = 0; the class
// of 1/p is the expansion cusp and never enters the sum.
Rat valence_bound(long p, long k, const std::map<CuspClass, Rat>& e);

} // namespace qrank
