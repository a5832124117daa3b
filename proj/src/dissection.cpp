#include "qrank/dissection.hpp"

#include <memory>
#include <mutex>

#include "qrank/appell.hpp"
#include "qrank/partitions.hpp"
#include "qrank/qseries.hpp"

namespace qrank {

namespace {

long mod_pos(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

void check_pair(long p, long s) {
    if (p < 5 || p % 2 == 0 || p % 3 == 0)
        throw std::invalid_argument("level must be an odd prime at least 5");
    if (s <= 0 || 2 * s >= p) throw std::invalid_argument("need 0 < s < p/2");
}

long inverse_mod(long a, long p) {
    a = mod_pos(a, p);
    for (long x = 1; x < p; ++x)
        if (a * x % p == 1) return x;
    throw std::invalid_argument("inverse_mod: not invertible");
}

// shared statistic tables, grown on demand
std::shared_ptr<const StatTable> cached_table(long m, long n_max) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<const StatTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[m];
    if (!slot || slot->n_max < n_max) {
        long target = std::max(n_max, slot ? 2 * slot->n_max : 64L);
        slot = std::make_shared<const StatTable>(stat_tables(m, target, "gf-dp"));
    }
    return slot;
}

// weighted deviation combination sum_{r=1}^{p-1} (p-2r)/(2p) dev(r - s)
PSeries deviation_mix(const StatTable& t, PartStat stat, long s) {
    long p = t.modulus;
    PSeries acc = PSeries::zero();
    for (long r = 1; r < p; ++r)
        acc += stat_dev_series(t, stat, mod_pos(r - s, p)).scaled(Coef(rat(p - 2 * r, 2 * p)));
    if (stat == PartStat::CrankCount) {
        // The crank generating function (q)_inf/((zq)_inf (q/z)_inf) puts
        // z - 1 + z^{-1} at q^1 while the lone partition of 1 counts once at
        // crank -1.  The deviation combination follows the generating
        // function, so shift the n = 1 term by the weighted difference.
        Rat w(0);
        for (long r = 1; r < p; ++r) {
            long a = mod_pos(r - s, p);
            long delta = a == 0 ? -1 : a == 1 ? 1 : 0;
            if (delta != 0) w += rat((p - 2 * r) * delta, 2 * p);
        }
        acc += PSeries::monomial(Rat(1), Coef(w));
    }
    return acc;
}

PSeries remainder_by_enumeration(long p, long s, long k, const Rat& E, PartStat diff_stat,
                                 PartStat dev_stat, const LambertCase& lc) {
    long n_max = p * (to_long(rat_ceil(E)) + 1) + k;
    auto table = cached_table(p, n_max);
    PSeries combined = stat_diff_series(*table, diff_stat, s) - deviation_mix(*table, dev_stat, s);
    PSeries out = dissect(combined, p, k);
    if (lc.sign != 0) {
        PSeries block = lambert_block(p, lc.v, E - lc.c).shift(lc.c);
        out -= block.scaled(Coef(Rat(lc.sign * chi12(p))));
    }
    return out.truncated(E);
}

PSeries remainder_by_kernel(long p, long s, long k, const Rat& E, bool rank_side,
                            const LambertCase& lc) {
    Rat src_bound = Rat(p) * E + Rat(k);
    PSeries kernel = rank_side ? rank_parts_kernel(p, s, src_bound)
                               : crank_parts_kernel(p, s, src_bound);
    PSeries out = dissect(kernel, p, k);
    if (lc.sign != 0) {
        Rat shift = rat(-k, p);
        PSeries block = (lambert_block_centered(p, lc.v, E - shift) +
                         lambert_head_centered(p, lc.v))
                            .shift(shift);
        out -= block.scaled(Coef(Rat(lc.sign * chi12(p))));
    }
    return out.truncated(E);
}

} // namespace

int chi12(long p) {
    long r = mod_pos(p, 12);
    if (r == 1 || r == 11) return 1;
    if (r == 5 || r == 7) return -1;
    throw std::invalid_argument("chi12: argument shares a factor with 12");
}

long s_const(long p) {
    if ((p * p - 1) % 24 != 0) throw std::invalid_argument("s_const: p must be coprime to 6");
    return (p * p - 1) / 24;
}

LambertCase lambert_case(long p, long s, long k) {
    check_pair(p, s);
    LambertCase lc;
    auto solve_v = [&](long m) { return mod_pos(-(2 * m + 1) * inverse_mod(6, p), p); };
    if (mod_pos(6 * k + s * s - s, p) == 0) {
        lc.sign = 1;
        lc.v = solve_v(s - 1);
    } else if (mod_pos(6 * k + s * s + s, p) == 0) {
        lc.sign = -1;
        lc.v = solve_v(s);
    } else {
        return lc;
    }
    lc.c = rat(3 * lc.v * (p - lc.v), 2 * p) - rat(k + s_const(p), p);
    return lc;
}

PSeries dissect(const PSeries& f, long p, long k) {
    return Upk(f, p, k).shift(rat(-k, p));
}

PSeries rank_parts_remainder(long p, long s, long k, const Rat& E, Route route) {
    check_pair(p, s);
    LambertCase lc = lambert_case(p, s, k);
    if (route == Route::enumeration)
        return remainder_by_enumeration(p, s, k, E, PartStat::RankParts, PartStat::RankCount, lc);
    return remainder_by_kernel(p, s, k, E, true, lc);
}

PSeries crank_ones_remainder(long p, long s, long k, const Rat& E, Route route) {
    check_pair(p, s);
    LambertCase lc; // no block on the crank side
    if (route == Route::enumeration)
        return remainder_by_enumeration(p, s, k, E, PartStat::CrankOnes, PartStat::CrankCount, lc);
    return remainder_by_kernel(p, s, k, E, false, lc);
}

PSeries modular_prefactor(long p, long k, const Rat& E) {
    long K = k + s_const(p) + 1;
    Rat B = E + Rat(2);
    PSeries acc = theta_prod(p, 1, B);
    acc *= acc;
    PSeries euler_inv = euler_prod(p, B).inverted();
    for (int i = 0; i < 5; ++i) acc *= euler_inv;
    PSeries ratio = theta_prod(p, (p - 1) / 2, B) * theta_prod(p, (p - 3) / 2, B).inverted();
    for (long i = 0; i < K; ++i) acc *= ratio;
    return acc.shift(Rat(-1)).truncated(E);
}

EtaQuotient t_quotient(long p) {
    if (p == 5) return {{5, 1, 5}, {5, 2, -5}};
    if (p == 7) return {{7, 1, 3}, {7, 2, -2}, {7, 3, -1}};
    throw std::invalid_argument("t_quotient: only levels 5 and 7 have this hauptmodul");
}

PSeries t_series(long p, const Rat& E) { return eta_quotient_expand(t_quotient(p), E); }

namespace {

std::map<long, PSeries> t_powers(long p, long lo, long hi, const Rat& E) {
    PSeries t = t_series(p, E);
    PSeries tinv = t.inverted();
    std::map<long, PSeries> pw;
    pw[0] = PSeries::one();
    for (long i = 1; i <= hi; ++i) pw[i] = pw[i - 1] * t;
    for (long i = -1; i >= lo; --i) pw[i] = pw[i + 1] * tinv;
    return pw;
}

} // namespace

std::map<long, Rat> t_poly_fit(const PSeries& f, long p, long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("t_poly_fit: empty exponent range");
    if (!f.bounded() || f.bound() <= Rat(hi))
        throw std::invalid_argument("t_poly_fit: series not complete past the top t power");
    Rat Et = f.bound() + Rat(3 * (std::abs(lo) + std::abs(hi)) + 6);
    auto pw = t_powers(p, lo, hi, Et);
    PSeries residual = f;
    std::map<long, Rat> coeffs;
    for (long i = lo; i <= hi; ++i) {
        Rat c = coef_rat(residual.at(Rat(i)));
        if (c == 0) continue;
        coeffs[i] = c;
        residual -= pw[i].scaled(Coef(c));
    }
    if (!residual.known_zero()) throw FitFailed(*residual.valuation());
    return coeffs;
}

PSeries t_poly_expand(const std::map<long, Rat>& poly, long p, const Rat& E) {
    long lo = 0, hi = 0;
    for (const auto& [i, c] : poly) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
    }
    Rat Et = E + Rat(3 * (std::abs(lo) + std::abs(hi)) + 6);
    auto pw = t_powers(p, lo, hi, Et);
    PSeries acc = PSeries::zero_to(E);
    for (const auto& [i, c] : poly) acc += pw[i].scaled(Coef(c));
    return acc.truncated(E);
}

} // namespace qrank
