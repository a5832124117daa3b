#include "qrank/modular.hpp"

#include "qrank/qseries.hpp"

namespace qrank {

namespace {

void check_level(long p) {
    if (p < 5 || p % 2 == 0 || p % 3 == 0)
        throw std::invalid_argument("level must be an odd prime at least 5");
}

long mod_pos(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

long mod_pos(const Int& x, long m) {
    Int r = x % m;
    if (r < 0) r += m;
    return to_long(r);
}

// smallest representative of {x, p - x} in [1, (p-1)/2]
long fold_sign(long x, long p) {
    x = mod_pos(x, p);
    return x <= (p - 1) / 2 ? x : p - x;
}

Rat bernoulli_p2(const Rat& x) { return x * x - x + Rat(1, 6); }

Rat bernoulli_p2_periodic(const Rat& x) {
    Rat f = x - Rat(rat_floor(x));
    return bernoulli_p2(f);
}

} // namespace

std::vector<CuspClass> cusp_set(long p) {
    check_level(p);
    std::vector<CuspClass> out;
    for (long c = 1; c <= (p - 1) / 2; ++c) out.push_back({p, p, c, p});
    for (long a = 1; a <= (p - 1) / 2; ++a) out.push_back({p, a, p, 1});
    return out;
}

CuspClass cusp_normalize(long p, long a, long c) {
    check_level(p);
    if (gcd_long(a, c) != 1) throw std::invalid_argument("cusp_normalize: a/c not in lowest terms");
    if (mod_pos(c, p) == 0) {
        // class determined by +-a mod p; covers i-infinity (c = 0) as 1/p
        return {p, fold_sign(a, p), p, 1};
    }
    return {p, p, fold_sign(c, p), p};
}

bool cusp_equiv(long p, long a1, long c1, long a2, long c2) {
    check_level(p);
    if (gcd_long(a1, c1) != 1 || gcd_long(a2, c2) != 1)
        throw std::invalid_argument("cusp_equiv: cusp not in lowest terms");
    long g = gcd_long(p, c1);
    for (long e : {1L, -1L}) {
        if (mod_pos(c1 - e * c2, p) != 0) continue;
        if (g == 1 || mod_pos(a1 - e * a2, g) == 0) return true;
    }
    return false;
}

Rat ord_geta(long p, long delta, long a, long c) {
    if (delta <= 0 || delta >= p) throw std::invalid_argument("ord_geta: need 0 < delta < p");
    if (gcd_long(a, c) != 1) throw std::invalid_argument("ord_geta: a/c not in lowest terms");
    long g = gcd_long(p, c);
    Rat x = rat(Int(a) * delta, Int(g));
    return rat(g * g, 2 * p) * bernoulli_p2_periodic(x);
}

Rat ord_eta_scaled(long m, long a, long c) {
    if (m <= 0) throw std::invalid_argument("ord_eta_scaled: m must be positive");
    if (gcd_long(a, c) != 1) throw std::invalid_argument("ord_eta_scaled: a/c not in lowest terms");
    long g = gcd_long(m, c);
    return rat(g * g, 24 * m);
}

PSeries eta_quotient_expand(const EtaQuotient& fs, const Rat& E) {
    // Expand every base factor far enough that after inversions and the
    // product's bound bookkeeping the result is still complete below E.
    Rat slack(1);
    for (const auto& f : fs) {
        Rat v = f.delta == 0 ? rat(f.m, 24) : rat(f.m, 2) * bernoulli_p2(rat(f.delta, f.m));
        Rat width = Rat(std::abs(f.power)) * v;
        if (width < 0) width = -width;
        slack += 2 * width + 1;
    }
    PSeries acc = PSeries::one();
    for (const auto& f : fs) {
        EtaSpec spec = f.delta == 0 ? EtaSpec::classic(f.m) : EtaSpec::generalized(f.m, f.delta);
        PSeries base = eta_expand(spec, E + slack);
        if (f.power < 0) base = base.inverted();
        for (long i = 0; i < std::abs(f.power); ++i) acc *= base;
    }
    return acc.truncated(E);
}

Rat ord_eta_quotient(const EtaQuotient& fs, long a, long c) {
    Rat acc(0);
    for (const auto& f : fs) {
        Rat o = f.delta == 0 ? ord_eta_scaled(f.m, a, c) : ord_geta(f.m, f.delta, a, c);
        acc += Rat(f.power) * o;
    }
    return acc;
}

Rat DivisorLedger::total() const {
    Rat acc = interior;
    for (const auto& [cusp, d] : div) acc += d;
    return acc;
}

DivisorLedger eta_div_ledger(const EtaQuotient& fs, long p) {
    DivisorLedger ledger;
    ledger.p = p;
    ledger.interior = Rat(0);
    for (const auto& cusp : cusp_set(p))
        ledger.div[cusp] = Rat(cusp.width) * ord_eta_quotient(fs, cusp.a, cusp.c);
    return ledger;
}

Cyc chi_eta(const Mat2& g) {
    if (g.det() != 1) throw std::invalid_argument("chi_eta: determinant must be 1");
    Int a(g.a), b(g.b), c(g.c), d(g.d);
    int sym;
    Int x;
    if (mod_pos(g.c, 2) == 1) {
        sym = kronecker(d, abs(c));
        x = (a + d - 3) * c - b * d * (c * c - 1);
    } else {
        sym = kronecker(c, d);
        x = (a - 2 * d) * c - b * d * (c * c - 1) + 3 * d - 3;
    }
    Cyc root = Cyc::zeta_pow(24, mod_pos(x, 24));
    return sym < 0 ? -root : root;
}

Cyc chi_geta(long p, long delta, const Mat2& g) {
    check_level(p);
    if (delta <= 0 || delta >= p) throw std::invalid_argument("chi_geta: need 0 < delta < p");
    if (g.det() != 1) throw NotInGroup("chi_geta: determinant must be 1");
    if (mod_pos(g.c, p) != 0 || mod_pos(g.a - 1, p) != 0 || mod_pos(g.d - 1, p) != 0)
        throw NotInGroup("chi_geta: matrix outside Gamma_1(p)");
    Cyc base = chi_eta({g.a, p * g.b, g.c / p, g.d});
    Cyc value = base * base;
    long twist = mod_pos(Int(g.a) * g.b * delta * delta, 2 * p);
    value *= Cyc::zeta_pow(2 * p, twist);
    Int sign_exp = Int(g.a - 1) / p * delta + Int(g.b) * delta;
    if (mod_pos(sign_exp, 2) == 1) value = -value;
    return value;
}

PSeries Upk(const PSeries& f, long p, long k) {
    check_level(p);
    const long N = f.denom();
    SeriesBuilder out(p);
    for (const auto& [key, coef] : f.raw_terms()) {
        if (key % N != 0) throw ExponentDomain("Upk: exponent not an integer");
        long e = key / N;
        if (mod_pos(e - k, p) != 0) continue;
        out.add_exp(rat(e, p), coef);
    }
    if (f.bounded()) {
        Int e0 = rat_ceil(f.bound());
        long r = mod_pos(e0 - k, p);
        if (r != 0) e0 += p - r;
        out.set_bound(rat(e0, Int(p)));
    }
    return out.take();
}

PSeries Upk_prime(const PSeries& f, long p, long k) {
    check_level(p);
    const long N = f.denom();
    SeriesBuilder out(24 * p);
    for (const auto& [key, coef] : f.raw_terms()) {
        if ((24 * key) % N != 0) throw ExponentDomain("Upk_prime: exponent not in (1/24)Z");
        long t24 = 24 * key / N; // 24 * exponent
        if (mod_pos(t24 - 24 * k - (p - 1), 24 * p) != 0) continue;
        out.add_exp(rat(t24, 24 * p), coef);
    }
    if (f.bounded()) {
        // first admissible exponent at or above the bound, divided by p
        Rat shift = rat(24 * k + p - 1, 24);
        Int j0 = rat_ceil((f.bound() - shift) / p);
        out.set_bound((shift + Rat(j0) * p) / p);
    }
    return out.take();
}

PSeries Upk_prime_average(const PSeries& f, long p, long k) {
    check_level(p);
    const long N = f.denom();
    SeriesBuilder out(24 * p);
    for (const auto& [key, coef] : f.raw_terms()) {
        if ((24 * key) % N != 0) throw ExponentDomain("Upk_prime_average: exponent not in (1/24)Z");
        long t24 = 24 * key / N;
        long x = mod_pos(t24 - 24 * k - (p - 1), 24 * p);
        Cyc w = Cyc::zero(24 * p);
        for (long m = 0; m < p; ++m) w += Cyc::zeta_pow(24 * p, mod_pos(m * x, 24 * p));
        Coef scaled = coef_mul(coef, Coef(Rat(1, p) * w));
        if (coef_is_zero(scaled)) continue;
        out.add_exp(rat(t24, 24 * p), scaled);
    }
    if (f.bounded()) out.set_bound(f.bound() / p);
    return out.take();
}

bool rv_condition(long p, long k, const std::map<long, long>& r) {
    check_level(p);
    Int acc = 24 * Int(k) - 1;
    for (const auto& [delta, mult] : r) acc += 12 * Int(mult) * delta * delta;
    return mod_pos(acc, p) == 0;
}

Rat valence_bound(long p, long k, const std::map<CuspClass, Rat>& e) {
    check_level(p);
    const long sp = (p * p - 1) / 24;
    auto pole = [&](const CuspClass& cusp) {
        auto it = e.find(cusp);
        return it == e.end() ? Rat(0) : it->second;
    };
    Rat n1(0);
    for (long c = 1; c <= (p - 1) / 2; ++c) {
        Rat bound(sp);
        Rat ext = pole({p, p, c, p});
        n1 += ext > bound ? ext : bound;
    }
    for (long a = 2; a <= (p - 1) / 2; ++a) {
        Rat bound = rat((k + sp + 3) * p, 8);
        Rat ext = pole({p, a, p, 1});
        n1 += ext > bound ? ext : bound;
    }
    return n1;
}

} // namespace qrank
