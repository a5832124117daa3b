#include "qrank/qseries.hpp"

#include <cmath>

namespace qrank {

PSeries one_minus(const Coef& zeta, const Rat& e) {
    if (coef_is_zero(zeta)) return PSeries::one();
    if (e > 0)
        return PSeries::one() - PSeries::monomial(e, zeta);
    if (e == 0) {
        Coef c = coef_add(Coef(Rat(1)), coef_neg(zeta));
        if (coef_is_zero(c)) throw DegeneratePole("one_minus: factor (1 - zeta) vanishes");
        return PSeries::monomial(Rat(0), c);
    }
    // 1 - zeta q^e = -zeta q^e (1 - zeta^{-1} q^{-e})
    PSeries inner = PSeries::one() - PSeries::monomial(-e, coef_inv(zeta));
    return inner.shift(e).scaled(coef_neg(zeta));
}

PSeries poch(const Coef& zeta, const Rat& offset, const Rat& step, long count, const Rat& E) {
    PSeries acc = PSeries::one().truncated(E);
    if (count >= 0) {
        Rat e = offset;
        for (long j = 0; j < count; ++j, e += step)
            acc *= one_minus(zeta, e);
        return acc;
    }
    if (step <= 0) throw std::invalid_argument("poch: infinite product needs positive step");
    Rat e = offset;
    // factors with nonpositive exponent must be expanded via the rewrite in
    // one_minus; beyond E a factor is 1 below the truncation
    while (e < E) {
        acc *= one_minus(zeta, e);
        e += step;
    }
    return acc;
}

PSeries poch_inf(const std::vector<Rat>& offsets, const Rat& step, const Rat& E) {
    PSeries acc = PSeries::one().truncated(E);
    for (const Rat& o : offsets)
        acc *= poch(Coef(Rat(1)), o, step, -1, E);
    return acc;
}

PSeries euler_prod(long k, const Rat& E) {
    return poch_inf({Rat(k)}, Rat(k), E);
}

PSeries theta_prod(long k, long a, const Rat& E) {
    return poch_inf({Rat(a), Rat(k - a), Rat(k)}, Rat(k), E);
}

EtaSpec EtaSpec::classic(long m) {
    EtaSpec s;
    s.e0 = rat(m, 24);
    s.factors = {{Rat(m), Rat(m)}};
    return s;
}

EtaSpec EtaSpec::generalized(long p, long d) {
    if (d <= 0 || d >= p) throw std::invalid_argument("EtaSpec::generalized: need 0 < d < p");
    EtaSpec s;
    Rat x = rat(d, p);
    s.e0 = rat(p, 2) * (x * x - x + rat(1, 6));
    s.factors = {{Rat(d), Rat(p)}, {Rat(p - d), Rat(p)}};
    return s;
}

PSeries eta_expand(const EtaSpec& spec, const Rat& E) {
    // expand the product to E - e0 so the shifted result is complete below E
    Rat Ein = E - spec.e0;
    PSeries acc = PSeries::one().truncated(Ein);
    for (const auto& [o, s] : spec.factors)
        acc *= poch(Coef(Rat(1)), o, s, -1, Ein);
    return acc.shift(spec.e0);
}

PSeries theta_char(const Rat& r, const Rat& s, long mult, const Rat& E) {
    long sd = to_long(s.get_den());
    long sn = to_long(s.get_num());
    Coef zs = Coef(Cyc::zeta_pow(sd, sn));
    Coef zs_inv = Coef(Cyc::zeta_pow(sd, -sn));

    // prefactor -i e^{-pi i s} q^{mult(1/8 - r/2)}
    Coef phase = coef_mul(Coef(Cyc::zeta_pow(4, -1)), Coef(Cyc::zeta_pow(2 * sd, -sn)));
    Rat e0 = Rat(mult) * (rat(1, 8) - r / 2);

    Rat Ein = E - e0;
    PSeries acc = PSeries::one().truncated(Ein);
    Rat m(mult);

    // (1 - zs q^{mult(n-1+r)}) for n >= 1: arithmetic progression, but only
    // finitely many exponents are negative, so walk from the smallest
    Rat e = m * r; // n = 1
    while (e < Ein) {
        acc *= one_minus(zs, e);
        e += m;
    }
    e = m * (Rat(1) - r); // n = 1 of the conjugate family
    while (e < Ein) {
        acc *= one_minus(zs_inv, e);
        e += m;
    }
    acc *= poch(Coef(Rat(1)), m, m, -1, Ein);

    return acc.scaled(phase).shift(e0);
}

PSeries theta_char_sum(const Rat& r, const Rat& s, long mult, const Rat& E) {
    // sum_j q^{mult[(j+1/2)^2/2 + (j+1/2) r]} e^{pi i (2j+1)(2s+1)/2}
    long sd = to_long(s.get_den());
    long sn = to_long(s.get_num());
    SeriesBuilder sb(lcm_long(8, 2 * to_long(r.get_den())));
    sb.set_bound(E);
    Rat m(mult);
    // exponent in j is (m/2) j^2 + lower order; |j| beyond sqrt(2E/m)+|r|+2 is safe
    double Ed = mpq_get_d(E.get_mpq_t());
    double rd = mpq_get_d(r.get_mpq_t());
    long J = static_cast<long>(std::sqrt(std::max(0.0, 2.0 * std::abs(Ed) / mult)) + std::abs(rd) + 4);
    for (long j = -J; j <= J; ++j) {
        Rat half(2 * j + 1, 2);
        half.canonicalize();
        Rat expo = m * (half * half / 2 + half * r);
        if (expo >= E) continue;
        Coef c = Coef(Cyc::zeta_pow(4 * sd, (2 * j + 1) * (2 * sn + sd)));
        sb.add_exp(expo, c);
    }
    return sb.take();
}

PSeries e2_expand(const Rat& E) {
    long n_max = to_long(rat_ceil(E));
    if (n_max < 1) return PSeries::one().truncated(E);
    std::vector<long> sigma1(static_cast<size_t>(n_max), 0);
    for (long d = 1; d < n_max; ++d)
        for (long n = d; n < n_max; n += d) sigma1[static_cast<size_t>(n)] += d;
    SeriesBuilder sb(1);
    sb.set_bound(E);
    sb.add_exp(Rat(0), Coef(Rat(1)));
    for (long n = 1; n < n_max; ++n)
        sb.add_exp(Rat(n), Coef(Rat(-24 * sigma1[static_cast<size_t>(n)])));
    return sb.take();
}

PSeries mocktheta_g(long a, long b, const Rat& E) {
    if (!(0 < a && a < b)) throw std::invalid_argument("mocktheta_g: need 0 < a < b");
    // after the q^{-a} shift the n-th summand sits at exponent b n^2 - a
    Rat Ein = E + Rat(a);
    PSeries sum = PSeries::monomial(Rat(0), Coef(Rat(-1))).truncated(Ein);
    PSeries denom = PSeries::one().truncated(Ein); // (q^a;q^b)_{n+1} (q^{b-a};q^b)_n
    for (long n = 0; Rat(b) * n * n < Ein; ++n) {
        denom *= one_minus(Coef(Rat(1)), Rat(a + b * n));
        if (n >= 1) denom *= one_minus(Coef(Rat(1)), Rat(b - a + b * (n - 1)));
        sum += denom.inverted().shift(Rat(b) * n * n);
    }
    return sum.shift(Rat(-a));
}

} // namespace qrank
