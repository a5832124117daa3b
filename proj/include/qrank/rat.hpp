#pragma once

// Exact rational scalars. GMP's mpq_class already maintains the canonical
// form we need (reduced, positive denominator), so Rat is an alias plus a
// few helpers the series layer leans on.

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrank {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// floor(a/b) with exact integer result
inline Int rat_floor(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline Int rat_ceil(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("to_long: out of range");
    return z.get_si();
}

// "a/b" without the "/1" for integers
inline std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline long gcd_long(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

inline long lcm_long(long a, long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_long(a, b) * b;
}

// Euler phi for the modest conductors the cyclotomic layer uses
inline long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Kronecker-Jacobi symbol (a/b), fully extended (b may be 0, negative, even).
inline int kronecker(Int a, Int b) {
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}
inline int kronecker(long a, long b) { return kronecker(Int(a), Int(b)); }

} // namespace qrank
