#include "qrank/pseries.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qrank {

bool coef_is_zero(const Coef& c) {
    if (std::holds_alternative<Rat>(c)) return std::get<Rat>(c) == 0;
    return std::get<Cyc>(c).is_zero();
}

bool coef_is_rational(const Coef& c) {
    if (std::holds_alternative<Rat>(c)) return true;
    return std::get<Cyc>(c).is_rational();
}

Rat coef_rat(const Coef& c) {
    if (std::holds_alternative<Rat>(c)) return std::get<Rat>(c);
    return std::get<Cyc>(c).to_rat();
}

Cyc coef_cyc(const Coef& c) {
    if (std::holds_alternative<Rat>(c)) return Cyc(std::get<Rat>(c));
    return std::get<Cyc>(c);
}

Coef coef_add(const Coef& a, const Coef& b) {
    if (std::holds_alternative<Rat>(a) && std::holds_alternative<Rat>(b))
        return Coef(std::get<Rat>(a) + std::get<Rat>(b));
    return Coef(coef_cyc(a) + coef_cyc(b));
}

Coef coef_mul(const Coef& a, const Coef& b) {
    if (std::holds_alternative<Rat>(a) && std::holds_alternative<Rat>(b))
        return Coef(std::get<Rat>(a) * std::get<Rat>(b));
    return Coef(coef_cyc(a) * coef_cyc(b));
}

Coef coef_neg(const Coef& a) {
    if (std::holds_alternative<Rat>(a)) return Coef(-std::get<Rat>(a));
    return Coef(-std::get<Cyc>(a));
}

Coef coef_inv(const Coef& a) {
    if (std::holds_alternative<Rat>(a)) {
        const Rat& r = std::get<Rat>(a);
        if (r == 0) throw std::domain_error("coef_inv: zero");
        return Coef(Rat(1) / r);
    }
    return Coef(std::get<Cyc>(a).inverse());
}

bool coef_eq(const Coef& a, const Coef& b) {
    if (std::holds_alternative<Rat>(a) && std::holds_alternative<Rat>(b))
        return std::get<Rat>(a) == std::get<Rat>(b);
    return coef_cyc(a) == coef_cyc(b);
}

std::string coef_str(const Coef& c) {
    if (std::holds_alternative<Rat>(c)) return rat_str(std::get<Rat>(c));
    return std::get<Cyc>(c).str();
}

std::complex<double> coef_complex(const Coef& c) {
    if (std::holds_alternative<Rat>(c))
        return {mpq_get_d(std::get<Rat>(c).get_mpq_t()), 0.0};
    return std::get<Cyc>(c).to_complex();
}

// ---------------------------------------------------------------------------

PSeries PSeries::zero_to(const Rat& E) {
    PSeries s;
    s.N_ = static_cast<long>(E.get_den().get_si());
    s.bounded_ = true;
    s.bound_num_ = static_cast<long>(E.get_num().get_si());
    s.normalize();
    return s;
}

PSeries PSeries::monomial(const Rat& e, Coef c) {
    PSeries s;
    s.N_ = static_cast<long>(e.get_den().get_si());
    if (!coef_is_zero(c)) s.terms_.emplace(static_cast<long>(e.get_num().get_si()), std::move(c));
    s.normalize();
    return s;
}

std::optional<Rat> PSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    Rat v(terms_.begin()->first, N_);
    v.canonicalize();
    return v;
}

Coef PSeries::at(const Rat& e) const {
    if (bounded_ && e >= bound())
        throw std::out_of_range("PSeries::at: exponent at/above truncation bound");
    Rat scaled = e * N_;
    if (!is_integer(scaled)) return Coef(Rat(0));
    auto it = terms_.find(to_long(scaled.get_num()));
    if (it == terms_.end()) return Coef(Rat(0));
    return it->second;
}

void PSeries::set(const Rat& e, Coef c) {
    long N = lcm_long(N_, static_cast<long>(e.get_den().get_si()));
    rescale_to(N);
    terms_[static_cast<long>(e.get_num().get_si()) * (N / static_cast<long>(e.get_den().get_si()))] = std::move(c);
    normalize();
}

void PSeries::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (coef_is_zero(it->second) || (bounded_ && it->first >= bound_num_))
            it = terms_.erase(it);
        else
            ++it;
    }
    long g = bounded_ ? gcd_long(N_, bound_num_) : N_;
    for (const auto& [k, c] : terms_) {
        g = gcd_long(g, k);
        if (g == 1) break;
    }
    if (g > 1) {
        std::map<long, Coef> m;
        for (auto& [k, c] : terms_) m.emplace(k / g, std::move(c));
        terms_ = std::move(m);
        N_ /= g;
        bound_num_ /= g;
    }
    if (terms_.empty() && !bounded_) N_ = 1;
}

void PSeries::rescale_to(long N) {
    if (N == N_) return;
    if (N % N_ != 0) throw std::logic_error("rescale_to: not a multiple");
    long f = N / N_;
    std::map<long, Coef> m;
    for (auto& [k, c] : terms_) m.emplace(k * f, std::move(c));
    terms_ = std::move(m);
    bound_num_ *= f;
    N_ = N;
}

long PSeries::common_denom(const PSeries& a, const PSeries& b) {
    return lcm_long(a.N_, b.N_);
}

PSeries PSeries::operator-() const {
    PSeries r = *this;
    for (auto& [k, c] : r.terms_) c = coef_neg(c);
    return r;
}

PSeries operator+(const PSeries& a, const PSeries& b) {
    long N = PSeries::common_denom(a, b);
    PSeries x = a, y = b;
    x.rescale_to(N);
    y.rescale_to(N);
    for (auto& [k, c] : y.terms_) {
        auto it = x.terms_.find(k);
        if (it == x.terms_.end())
            x.terms_.emplace(k, std::move(c));
        else
            it->second = coef_add(it->second, c);
    }
    if (y.bounded_ && (!x.bounded_ || y.bound_num_ < x.bound_num_)) {
        x.bounded_ = true;
        x.bound_num_ = y.bound_num_;
    }
    x.normalize();
    return x;
}

PSeries operator-(const PSeries& a, const PSeries& b) { return a + (-b); }

PSeries operator*(const PSeries& a, const PSeries& b) {
    // an exact zero annihilates regardless of the other factor's bound
    if (a.terms_.empty() && !a.bounded_) return PSeries();
    if (b.terms_.empty() && !b.bounded_) return PSeries();

    long N = PSeries::common_denom(a, b);
    PSeries x = a, y = b;
    x.rescale_to(N);
    y.rescale_to(N);

    const long INF = std::numeric_limits<long>::max() / 4;
    long valx = x.terms_.empty() ? x.bound_num_ : x.terms_.begin()->first;
    long valy = y.terms_.empty() ? y.bound_num_ : y.terms_.begin()->first;

    long bound = INF;
    if (x.bounded_) bound = std::min(bound, x.bound_num_ + valy);
    if (y.bounded_) bound = std::min(bound, y.bound_num_ + valx);

    PSeries r;
    r.N_ = N;
    r.bounded_ = bound < INF;
    r.bound_num_ = r.bounded_ ? bound : 0;

    for (const auto& [kx, cx] : x.terms_) {
        if (r.bounded_ && kx + valy >= bound) break;
        for (const auto& [ky, cy] : y.terms_) {
            long k = kx + ky;
            if (r.bounded_ && k >= bound) break;
            Coef prod = coef_mul(cx, cy);
            auto it = r.terms_.find(k);
            if (it == r.terms_.end())
                r.terms_.emplace(k, std::move(prod));
            else
                it->second = coef_add(it->second, prod);
        }
    }
    r.normalize();
    return r;
}

PSeries PSeries::scaled(const Coef& s) const {
    PSeries r = *this;
    for (auto& [k, c] : r.terms_) c = coef_mul(s, c);
    r.normalize();
    return r;
}

PSeries PSeries::inverted() const {
    if (terms_.empty()) throw std::domain_error("PSeries::inverted: no leading term");
    long v = terms_.begin()->first;

    if (terms_.size() == 1) {
        PSeries r;
        r.N_ = N_;
        r.terms_.emplace(-v, coef_inv(terms_.begin()->second));
        if (bounded_) {
            r.bounded_ = true;
            r.bound_num_ = bound_num_ - 2 * v;
        }
        r.normalize();
        return r;
    }

    if (!bounded_)
        throw std::domain_error("PSeries::inverted: inverting a polynomial needs a truncation bound");

    // unit part u with relative keys, all multiples of g
    long g = 0;
    for (const auto& [k, c] : terms_) g = gcd_long(g, k - v);
    long rel_bound = bound_num_ - v;

    const Coef u0inv = coef_inv(terms_.begin()->second);
    std::map<long, Coef> b; // relative inverse coefficients
    b.emplace(0, u0inv);
    for (long x = g; x < rel_bound; x += g) {
        Coef acc = Coef(Rat(0));
        for (const auto& [k, c] : terms_) {
            long y = k - v;
            if (y <= 0 || y > x) continue;
            auto it = b.find(x - y);
            if (it == b.end()) continue;
            acc = coef_add(acc, coef_mul(c, it->second));
        }
        if (!coef_is_zero(acc)) b.emplace(x, coef_mul(coef_neg(u0inv), acc));
    }

    PSeries r;
    r.N_ = N_;
    r.bounded_ = true;
    r.bound_num_ = bound_num_ - 2 * v;
    for (auto& [x, c] : b) r.terms_.emplace(x - v, std::move(c));
    r.normalize();
    return r;
}

PSeries PSeries::scale_exponents(const Rat& m) const {
    if (m <= 0) throw std::invalid_argument("scale_exponents: factor must be positive");
    long mn = to_long(m.get_num()), md = to_long(m.get_den());
    PSeries r;
    r.N_ = N_ * md;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k * mn, c);
    r.bounded_ = bounded_;
    r.bound_num_ = bound_num_ * mn;
    r.normalize();
    return r;
}

PSeries PSeries::shift(const Rat& alpha) const {
    long ad = to_long(alpha.get_den());
    long N = lcm_long(N_, ad);
    PSeries r = *this;
    r.rescale_to(N);
    long off = to_long(alpha.get_num()) * (N / ad);
    std::map<long, Coef> m;
    for (auto& [k, c] : r.terms_) m.emplace(k + off, std::move(c));
    r.terms_ = std::move(m);
    r.bound_num_ += off;
    r.normalize();
    return r;
}

PSeries PSeries::qd_dq() const {
    PSeries r = *this;
    for (auto& [k, c] : r.terms_) {
        Rat e(k, N_);
        e.canonicalize();
        c = coef_mul(Coef(e), c);
    }
    r.normalize();
    return r;
}

PSeries PSeries::truncated(const Rat& E) const {
    PSeries r = *this;
    if (!r.bounded_ || E < r.bound()) {
        long N = lcm_long(r.N_, to_long(E.get_den()));
        r.rescale_to(N);
        r.bounded_ = true;
        r.bound_num_ = to_long(E.get_num()) * (N / to_long(E.get_den()));
    }
    r.normalize();
    return r;
}

bool PSeries::all_rational() const {
    for (const auto& [k, c] : terms_)
        if (!coef_is_rational(c)) return false;
    return true;
}

void PSeries::for_each(const std::function<void(const Rat&, const Coef&)>& f) const {
    for (const auto& [k, c] : terms_) {
        Rat e(k, N_);
        e.canonicalize();
        f(e, c);
    }
}

std::string PSeries::dump() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        Rat e(k, N_);
        e.canonicalize();
        os << rat_str(e) << '\t' << coef_str(c) << '\n';
    }
    return os.str();
}

std::optional<Rat> first_mismatch(const PSeries& a, const PSeries& b) {
    long N = PSeries::common_denom(a, b);
    PSeries x = a, y = b;
    x.rescale_to(N);
    y.rescale_to(N);

    const long INF = std::numeric_limits<long>::max() / 4;
    long bound = INF;
    if (x.bounded_) bound = std::min(bound, x.bound_num_);
    if (y.bounded_) bound = std::min(bound, y.bound_num_);

    auto ix = x.terms_.begin(), iy = y.terms_.begin();
    while (ix != x.terms_.end() || iy != y.terms_.end()) {
        long kx = ix != x.terms_.end() ? ix->first : INF;
        long ky = iy != y.terms_.end() ? iy->first : INF;
        long k = std::min(kx, ky);
        if (k >= bound) break;
        Coef cx = kx == k ? ix->second : Coef(Rat(0));
        Coef cy = ky == k ? iy->second : Coef(Rat(0));
        if (!coef_eq(cx, cy)) {
            Rat e(k, N);
            e.canonicalize();
            return e;
        }
        if (kx == k) ++ix;
        if (ky == k) ++iy;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

void SeriesBuilder::add(long key, const Coef& c) {
    auto it = terms_.find(key);
    if (it == terms_.end())
        terms_.emplace(key, c);
    else
        it->second = coef_add(it->second, c);
}

void SeriesBuilder::add_exp(const Rat& e, const Coef& c) {
    Rat scaled = e * N_;
    if (!is_integer(scaled)) throw std::invalid_argument("SeriesBuilder: exponent not in (1/N)Z");
    add(to_long(scaled.get_num()), c);
}

void SeriesBuilder::set_bound(const Rat& E) {
    bounded_ = true;
    bound_ = E;
}

PSeries SeriesBuilder::take() {
    PSeries s;
    s.N_ = N_;
    s.terms_ = std::move(terms_);
    if (bounded_) {
        long bd = to_long(bound_.get_den());
        if (N_ % bd != 0) s.rescale_to(lcm_long(N_, bd));
        s.bounded_ = true;
        s.bound_num_ = to_long(bound_.get_num()) * (s.N_ / bd);
    }
    s.normalize();
    return s;
}

} // namespace qrank
