#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n), zeta_n = e^{2 pi i / n}.
//
// Elements are stored in the power basis 1, z, ..., z^{phi(n)-1} modulo the
// n-th cyclotomic polynomial Phi_n.  The conductor is part of the value and
// is never lowered implicitly: arithmetic between different conductors works
// in the lcm, and extracting a rational is an explicit operation that fails
// loudly when the element is not rational.

#include "qrank/rat.hpp"

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qrank {

struct NotRational : std::runtime_error {
    NotRational() : std::runtime_error("cyclotomic element is not rational") {}
};

namespace detail {

// Phi_n as a monic integer polynomial (ascending coefficients).
// Computed by dividing x^n - 1 by Phi_d for all proper divisors d | n.
const std::vector<Int>& cyclotomic_poly(long n);

} // namespace detail

class Cyc {
public:
    Cyc() : n_(1), c_(1, Rat(0)) {}
    explicit Cyc(const Rat& r) : n_(1), c_(1, r) {}
    explicit Cyc(long v) : n_(1), c_(1, Rat(v)) {}

    static Cyc zero(long n) {
        Cyc x;
        x.n_ = n;
        x.c_.assign(degree(n), Rat(0));
        return x;
    }

    // zeta_n^k, any integer k
    static Cyc zeta_pow(long n, long k) {
        if (n < 1) throw std::invalid_argument("zeta_pow: conductor < 1");
        k %= n;
        if (k < 0) k += n;
        std::vector<Rat> raw(static_cast<size_t>(k) + 1, Rat(0));
        raw.back() = Rat(1);
        return from_poly(n, raw);
    }

    long conductor() const { return n_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    // The power-basis coordinates are a Q-basis, so rationality is exactly
    // "all coordinates above the constant vanish".
    Rat to_rat() const {
        if (!is_rational()) throw NotRational();
        return c_[0];
    }

    bool try_rat(Rat& out) const {
        if (!is_rational()) return false;
        out = c_[0];
        return true;
    }

    // Reinterpret in Q(zeta_m) for n_ | m via zeta_n = zeta_m^{m/n}.
    Cyc embedded(long m) const {
        if (m == n_) return *this;
        if (m % n_ != 0) throw std::invalid_argument("embedded: old conductor must divide new");
        long step = m / n_;
        std::vector<Rat> raw(static_cast<size_t>((c_.size() - 1) * step) + 1, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
        return from_poly(m, raw);
    }

    Cyc operator-() const {
        Cyc r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Cyc operator+(const Cyc& a, const Cyc& b) {
        long m = lcm_long(a.n_, b.n_);
        Cyc x = a.embedded(m), y = b.embedded(m);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }

    friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }

    friend Cyc operator*(const Cyc& a, const Cyc& b) {
        long m = lcm_long(a.n_, b.n_);
        Cyc x = a.embedded(m), y = b.embedded(m);
        std::vector<Rat> raw(x.c_.size() + y.c_.size() - 1, Rat(0));
        for (size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                raw[i + j] += x.c_[i] * y.c_[j];
            }
        }
        return from_poly(m, raw);
    }

    friend Cyc operator*(const Rat& s, const Cyc& a) {
        Cyc r = a;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    Cyc& operator+=(const Cyc& b) { *this = *this + b; return *this; }
    Cyc& operator-=(const Cyc& b) { *this = *this - b; return *this; }
    Cyc& operator*=(const Cyc& b) { *this = *this * b; return *this; }

    // Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    // against Phi_n (coprime for any nonzero element of the field).
    Cyc inverse() const;

    friend bool operator==(const Cyc& a, const Cyc& b) {
        long m = lcm_long(a.n_, b.n_);
        return a.embedded(m).c_ == b.embedded(m).c_;
    }
    friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        std::complex<double> acc(0.0, 0.0);
        const double two_pi = 6.283185307179586476925286766559;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            double arg = two_pi * static_cast<double>(i) / static_cast<double>(n_);
            acc += mpq_get_d(c_[i].get_mpq_t()) * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return acc;
    }

    // "[c0,c1,...]@n"
    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += rat_str(c_[i]);
        }
        s += "]@" + std::to_string(n_);
        return s;
    }

    static long degree(long n) { return n == 1 ? 1 : euler_phi(n); }

private:
    long n_;
    std::vector<Rat> c_;

    // Reduce an arbitrary-degree coefficient vector mod Phi_n and wrap it.
    static Cyc from_poly(long n, std::vector<Rat> raw);
};

} // namespace qrank
