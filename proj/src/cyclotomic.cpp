#include "qrank/cyclotomic.hpp"

namespace qrank {
namespace detail {

namespace {

// Exact division of integer polynomials (ascending coeffs), divisor monic
// or at least with leading coefficient dividing everything it meets.
std::vector<Int> poly_div_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    if (den.empty() || rem.size() < den.size())
        throw std::logic_error("poly_div_exact: bad degrees");
    std::vector<Int> quot(rem.size() - den.size() + 1, Int(0));
    for (size_t i = rem.size(); i-- >= den.size();) {
        Int q = rem[i] / den.back();
        quot[i - den.size() + 1] = q;
        if (q != 0)
            for (size_t j = 0; j < den.size(); ++j)
                rem[i - den.size() + 1 + j] -= q * den[j];
        if (i == den.size() - 1) break;
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return quot;
}

} // namespace

const std::vector<Int>& cyclotomic_poly(long n) {
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);

    // Iterative fill: Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
    // Computing each divisor's polynomial first keeps this loop-free of
    // recursion while the cache is shared.
    std::vector<long> stack{n};
    while (!stack.empty()) {
        long m = stack.back();
        if (cache.count(m)) { stack.pop_back(); continue; }
        bool ready = true;
        for (long d = 1; d < m; ++d)
            if (m % d == 0 && !cache.count(d)) { stack.push_back(d); ready = false; }
        if (!ready) continue;
        stack.pop_back();
        std::vector<Int> f(static_cast<size_t>(m) + 1, Int(0));
        f[0] = -1;
        f[static_cast<size_t>(m)] = 1;
        for (long d = 1; d < m; ++d)
            if (m % d == 0) f = poly_div_exact(f, cache.at(d));
        cache.emplace(m, std::move(f));
    }
    return cache.at(n);
}

} // namespace detail

namespace {

using Poly = std::vector<Rat>; // ascending, may carry trailing zeros

void strip(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// remainder of a mod b (b nonempty after strip), plain long division in Q[x]
Poly poly_mod(Poly a, const Poly& b) {
    strip(a);
    while (a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t j = 0; j < b.size(); ++j) a[off + j] -= q * b[j];
        strip(a);
    }
    return a;
}

} // namespace

Cyc Cyc::from_poly(long n, std::vector<Rat> raw) {
    const auto& phi_z = detail::cyclotomic_poly(n);
    Poly phi(phi_z.size());
    for (size_t i = 0; i < phi_z.size(); ++i) phi[i] = Rat(phi_z[i]);

    size_t deg = static_cast<size_t>(degree(n));
    while (raw.size() > deg) {
        // subtract raw.back() * x^{size-|phi|} * phi  (phi is monic)
        Rat lead = raw.back();
        if (lead != 0) {
            size_t off = raw.size() - phi.size();
            for (size_t j = 0; j < phi.size(); ++j) raw[off + j] -= lead * phi[j];
        }
        raw.pop_back();
    }
    raw.resize(deg, Rat(0));

    Cyc out;
    out.n_ = n;
    out.c_ = std::move(raw);
    return out;
}

Cyc Cyc::inverse() const {
    if (is_zero()) throw std::domain_error("Cyc::inverse: zero element");
    if (is_rational()) {
        Cyc r = zero(n_);
        r.c_[0] = Rat(1) / c_[0];
        return r;
    }

    const auto& phi_z = detail::cyclotomic_poly(n_);
    Poly r0(phi_z.size());
    for (size_t i = 0; i < phi_z.size(); ++i) r0[i] = Rat(phi_z[i]);
    Poly r1 = c_;
    strip(r1);

    // Extended Euclid: maintain s-coefficients for r1 only
    // (r = s * a mod phi, starting s0 = 0, s1 = 1).
    Poly s0{};
    Poly s1{Rat(1)};
    while (!r1.empty()) {
        // quotient of r0 by r1
        Poly q;
        Poly rem = r0;
        strip(rem);
        q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rat(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rat qc = rem.back() / r1.back();
            size_t off = rem.size() - r1.size();
            q[off] = qc;
            for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= qc * r1[j];
            strip(rem);
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        Poly qs(q.size() + s1.size(), Rat(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
        }
        Poly snew = s0;
        if (snew.size() < qs.size()) snew.resize(qs.size(), Rat(0));
        for (size_t i = 0; i < qs.size(); ++i) snew[i] -= qs[i];
        strip(snew);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snew);
    }

    // r0 is now gcd(a, phi): a nonzero constant since phi is irreducible.
    strip(r0);
    if (r0.size() != 1)
        throw std::logic_error("Cyc::inverse: element not invertible mod Phi_n");
    Rat g = r0[0];
    for (auto& c : s0) c /= g;
    return from_poly(n_, std::move(s0));
}

} // namespace qrank
