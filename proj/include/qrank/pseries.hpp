#pragma once

// Truncated q-series with rational exponents and exact coefficients.
//
// A PSeries holds finitely many nonzero terms c * q^e with e in (1/N) Z,
// stored as key = e * N in an ordered map, together with a truncation
// bound E: the series is complete for all exponents strictly below E.
// Unbounded series (polynomials known exactly) carry no bound.
//
// Coefficients are exact rationals or cyclotomic numbers; arithmetic
// promotes to the common field and truncation bounds propagate through
// every operation (for products: E = min(E1 + val2, E2 + val1)).

#include "qrank/cyclotomic.hpp"

#include <functional>
#include <map>
#include <optional>
#include <variant>

namespace qrank {

using Coef = std::variant<Rat, Cyc>;

bool coef_is_zero(const Coef& c);
bool coef_is_rational(const Coef& c);
Rat coef_rat(const Coef& c);          // throws NotRational on a non-rational Cyc
Cyc coef_cyc(const Coef& c);          // promotes a Rat
Coef coef_add(const Coef& a, const Coef& b);
Coef coef_mul(const Coef& a, const Coef& b);
Coef coef_neg(const Coef& a);
Coef coef_inv(const Coef& a);
bool coef_eq(const Coef& a, const Coef& b);
std::string coef_str(const Coef& c);
std::complex<double> coef_complex(const Coef& c);

class PSeries {
public:
    PSeries() = default;

    // zero series, complete below E
    static PSeries zero_to(const Rat& E);
    // exact zero / exact polynomial building block
    static PSeries zero() { return PSeries(); }
    static PSeries one() { return monomial(Rat(0), Coef(Rat(1))); }
    static PSeries monomial(const Rat& e, Coef c);

    bool bounded() const { return bounded_; }
    // truncation exponent; only meaningful when bounded()
    Rat bound() const {
        Rat b(bound_num_, N_);
        b.canonicalize();
        return b;
    }
    long denom() const { return N_; }
    bool known_zero() const { return terms_.empty(); }

    // lowest known exponent; nullopt when no terms are known
    std::optional<Rat> valuation() const;

    Coef at(const Rat& e) const;     // coefficient of q^e (0 if absent below bound)
    void set(const Rat& e, Coef c);  // insert/overwrite one term

    const std::map<long, Coef>& raw_terms() const { return terms_; }
    Rat exponent_of(long key) const {
        Rat e(key, N_);
        e.canonicalize();
        return e;
    }

    size_t term_count() const { return terms_.size(); }

    PSeries operator-() const;
    friend PSeries operator+(const PSeries& a, const PSeries& b);
    friend PSeries operator-(const PSeries& a, const PSeries& b);
    friend PSeries operator*(const PSeries& a, const PSeries& b);
    PSeries& operator+=(const PSeries& b) { *this = *this + b; return *this; }
    PSeries& operator-=(const PSeries& b) { *this = *this - b; return *this; }
    PSeries& operator*=(const PSeries& b) { *this = *this * b; return *this; }

    PSeries scaled(const Coef& s) const;           // s * series
    PSeries inverted() const;                      // 1/series, needs invertible lowest term
    PSeries scale_exponents(const Rat& m) const;   // q -> q^m, m > 0
    PSeries shift(const Rat& alpha) const;         // multiply by q^alpha
    PSeries qd_dq() const;                         // q d/dq: c q^e -> e c q^e
    PSeries truncated(const Rat& E) const;         // tighten the bound to min(E, bound)

    bool all_rational() const;

    // iterate terms in ascending exponent order
    void for_each(const std::function<void(const Rat&, const Coef&)>& f) const;

    // lines of "exponent<TAB>coefficient", ascending
    std::string dump() const;

    // first exponent strictly below both bounds where coefficients differ
    friend std::optional<Rat> first_mismatch(const PSeries& a, const PSeries& b);

private:
    long N_ = 1;           // exponent denominator
    std::map<long, Coef> terms_;
    bool bounded_ = false;
    long bound_num_ = 0;   // bound = bound_num_ / N_

    void normalize();      // drop zeros and terms at/above bound, reduce N
    void rescale_to(long N);
    static long common_denom(const PSeries& a, const PSeries& b);

    friend class SeriesBuilder;
};

// Incremental construction without per-term normalization cost.
class SeriesBuilder {
public:
    explicit SeriesBuilder(long N = 1) : N_(N) {}
    void add(long key, const Coef& c);             // key = exponent * N
    void add_exp(const Rat& e, const Coef& c);     // exponent as a rational
    void set_bound(const Rat& E);
    PSeries take();

private:
    long N_;
    std::map<long, Coef> terms_;
    bool bounded_ = false;
    Rat bound_;
};

} // namespace qrank
