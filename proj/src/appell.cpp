#include "qrank/appell.hpp"
#include "qrank/qseries.hpp"

#include <stdexcept>

namespace qrank {

namespace {

// e^{2 pi i t} as an exact coefficient
Coef unity_root(const Rat& t) {
    Rat r = t - Rat(rat_floor(t));
    long den = to_long(Int(r.get_den()));
    long num = to_long(Int(r.get_num()));
    if (den == 1) return Coef(Rat(1));
    if (den == 2) return Coef(Rat(-1));
    return Coef(Cyc::zeta_pow(den, num));
}

bool is_one(const Coef& c) { return coef_is_rational(c) && coef_rat(c) == 1; }

// Shared worker for appell_A / appell_dA.  Expands
//   a^{ell/2} sum_n (-1)^{ell n} Q^{ell n(n+1)/2} b^n * P_n
// where P_n = 1/(1 - a Q^n) for the value and
// P_n = (ell/2)/(1 - a Q^n) + a Q^n/(1 - a Q^n)^2 for the u-derivative
// (the latter is (1/2 pi i) d/du applied to a^{ell/2}/(1 - a Q^n), divided
// by a^{ell/2}).  With a = zeta q^{alpha+mult*n} each P_n is a geometric
// series in one direction of the exponent ladder.
PSeries appell_sum(long ell, const TauChar& u, const TauChar& v, long mult,
                   const Rat& bound, bool deriv) {
    if (ell < 1) throw std::invalid_argument("appell_sum: positive level required");
    if (mult < 1) throw std::invalid_argument("appell_sum: positive mult required");
    const Rat& alpha = u.alpha;
    const Rat& beta = u.beta;
    const Rat& gamma = v.alpha;
    const Rat& delta = v.beta;

    long Nu = to_long(Int(alpha.get_den()));
    long Ng = to_long(Int(gamma.get_den()));
    SeriesBuilder sb(lcm_long(2 * Nu, Ng));
    sb.set_bound(bound);

    const Rat half_ell = rat(ell, 2);
    const Rat pref_exp = half_ell * alpha;  // a^{ell/2} contributes q^{ell alpha/2}
    const Rat pref_rot = half_ell * beta;

    auto process = [&](long n) -> Rat {
        Rat base = pref_exp + Rat(mult) * rat(ell * n * (n + 1), 2) + gamma * Rat(n);
        Rat e = alpha + Rat(mult) * Rat(n);
        bool negate = (ell % 2 != 0) && (n % 2 != 0);
        Rat rot = pref_rot + delta * Rat(n);
        if (e > 0) {
            for (long r = 0;; ++r) {
                Rat ex = base + e * Rat(r);
                if (ex >= bound) break;
                Rat scale = deriv ? half_ell + Rat(r) : Rat(1);
                Coef c = coef_mul(Coef(scale), unity_root(rot + beta * Rat(r)));
                sb.add_exp(ex, negate ? coef_neg(c) : c);
            }
            return base;
        }
        if (e < 0) {
            for (long r = 1;; ++r) {
                Rat ex = base - e * Rat(r);
                if (ex >= bound) break;
                Rat scale = deriv ? Rat(r) - half_ell : Rat(-1);
                Coef c = coef_mul(Coef(scale), unity_root(rot - beta * Rat(r)));
                sb.add_exp(ex, negate ? coef_neg(c) : c);
            }
            return base - e;
        }
        Coef zc = unity_root(beta);
        if (is_one(zc)) throw DegeneratePole("appell_sum: 1 - a Q^n vanishes");
        Coef om_inv = coef_inv(coef_add(Coef(Rat(1)), coef_neg(zc)));
        Coef val = deriv ? coef_add(coef_mul(Coef(half_ell), om_inv),
                                    coef_mul(zc, coef_mul(om_inv, om_inv)))
                         : om_inv;
        if (base < bound) {
            Coef c = coef_mul(val, unity_root(rot));
            sb.add_exp(base, negate ? coef_neg(c) : c);
        }
        return base;
    };

    // min-exponent per index is convex in n, so stop on the first index past
    // the vertex whose cheapest term already clears the bound
    Rat prev = process(0);
    for (long n = 1;; ++n) {
        Rat m = process(n);
        if (m >= bound && m >= prev) break;
        prev = m;
    }
    prev = process(-1);
    for (long n = -2;; --n) {
        Rat m = process(n);
        if (m >= bound && m >= prev) break;
        prev = m;
    }
    return sb.take();
}

// Order branch shared by the cusp-order formulas.  With theta = ceil(-cx)+cx
// and mu = ceil(M)-M for M = ell*cx + ell/2:
//   (ell+1) theta + mu > ell/2 + 1  ->  (ell/2)(theta-1)^2 + (theta-1)(mu-1)
//   (ell+1) theta + mu < ell/2 + 1  ->  (ell/2) theta^2 + theta mu
Rat order_branch(long ell, const Rat& cx) {
    Rat theta = Rat(rat_ceil(-cx)) + cx;
    Rat M = Rat(ell) * cx + rat(ell, 2);
    Rat mu = Rat(rat_ceil(M)) - M;
    Rat lhs = Rat(ell + 1) * theta + mu;
    Rat rhs = rat(ell, 2) + Rat(1);
    if (lhs > rhs) return rat(ell, 2) * (theta - 1) * (theta - 1) + (theta - 1) * (mu - 1);
    if (lhs < rhs) return rat(ell, 2) * theta * theta + theta * mu;
    throw std::logic_error("order_branch: branch tie");
}

// sum over n (optionally skipping n = 0) of (-1)^n q^{3pn(n+1)/2} * P_n with
//   kind 1: P_n = 1/(1 - q^{pn+v})
//   kind 2: P_n = 1/(1 - q^{pn+v})^2
//   kind 3: P_n = (3/2)/(1 - q^{pn+v}) + q^{pn+v}/(1 - q^{pn+v})^2
PSeries bilateral_pole_sum(long p, long v, int kind, bool skip_zero, const Rat& bound) {
    SeriesBuilder sb(1);
    sb.set_bound(bound);
    auto process = [&](long n) -> Rat {
        Rat base = rat(3 * p * n * (n + 1), 2);
        long e = p * n + v;
        if (skip_zero && n == 0) return base;
        bool negate = (n % 2 != 0);
        if (e == 0) throw DegeneratePole("bilateral_pole_sum: vanishing factor");
        if (e > 0) {
            for (long r = 0;; ++r) {
                Rat ex = base + Rat(e * r);
                if (ex >= bound) break;
                Rat c = kind == 1 ? Rat(1) : kind == 2 ? Rat(r + 1) : rat(2 * r + 3, 2);
                sb.add_exp(ex, Coef(negate ? -c : c));
            }
            return base;
        }
        for (long r = 1;; ++r) {
            Rat ex = base + Rat(-e * r);
            if (ex >= bound) break;
            Rat c = kind == 1 ? Rat(-1) : kind == 2 ? Rat(r - 1) : rat(2 * r - 3, 2);
            if (kind == 2 && r == 1) continue;  // expansion starts at r = 2
            sb.add_exp(ex, Coef(negate ? -c : c));
        }
        return base + Rat(-e);
    };
    Rat prev = process(0);
    for (long n = 1;; ++n) {
        Rat m = process(n);
        if (m >= bound && m >= prev) break;
        prev = m;
    }
    prev = process(-1);
    for (long n = -2;; --n) {
        Rat m = process(n);
        if (m >= bound && m >= prev) break;
        prev = m;
    }
    return sb.take();
}

}  // namespace

PSeries appell_A(long ell, const TauChar& u, const TauChar& v, long mult, const Rat& bound) {
    return appell_sum(ell, u, v, mult, bound, false);
}

PSeries appell_dA(long ell, const TauChar& u, const TauChar& v, long mult, const Rat& bound) {
    return appell_sum(ell, u, v, mult, bound, true);
}

PSeries dahat_holo_at_cusp(long ell, const Rat& x, const Mat2& g, const Rat& bound) {
    if (g.det() != 1) throw std::invalid_argument("dahat_holo_at_cusp: det 1 required");
    if (g.c < 0) throw std::invalid_argument("dahat_holo_at_cusp: c >= 0 required");
    if (x <= 0 || is_integer(x)) {
        throw std::invalid_argument("dahat_holo_at_cusp: x must be positive nonintegral");
    }
    Rat cx = Rat(g.c) * x;
    Rat dx = Rat(g.d) * x;
    Rat M = Rat(ell) * cx + rat(ell, 2);
    long k = to_long(Int(x.get_den()));
    SeriesBuilder sb(2 * k * k);
    sb.set_bound(bound);

    if (is_integer(cx) && Rat(0) < bound) {
        // constant term -(1 - d + d (-1)^{cx} cos(pi dx)) / (4 sin^2(pi dx)),
        // d = 1 for odd ell and 0 for even, via zeta = e^{pi i dx}:
        // cos(pi dx) = (zeta + 1/zeta)/2, sin^2(pi dx) = -(zeta - 1/zeta)^2/4
        Coef zc = unity_root(dx / 2);
        Coef zi = unity_root(-dx / 2);
        Coef diff = coef_add(zc, coef_neg(zi));
        Coef sin2 = coef_mul(Coef(rat(-1, 4)), coef_mul(diff, diff));
        if (coef_is_zero(sin2)) {
            throw std::domain_error("dahat_holo_at_cusp: sin(pi d x) vanishes");
        }
        Coef num;
        if (ell % 2 != 0) {
            Coef cosv = coef_mul(Coef(rat(1, 2)), coef_add(zc, zi));
            bool odd_cx = (to_long(rat_floor(cx)) % 2 != 0);
            num = odd_cx ? coef_neg(cosv) : cosv;
        } else {
            num = Coef(Rat(1));
        }
        Coef cterm = coef_neg(coef_mul(num, coef_inv(coef_mul(Coef(Rat(4)), sin2))));
        sb.add_exp(Rat(0), cterm);
    }

    long m_top = to_long(rat_ceil(M));
    // lattice region t = n + cx > 0, m >= M
    for (long n = to_long(rat_floor(-cx)) + 1;; ++n) {
        Rat t = Rat(n) + cx;
        Rat base = rat(ell, 2) * t * t;
        if (base >= bound) break;
        bool negate = (ell % 2 != 0) && (n % 2 != 0);
        for (long m = m_top;; ++m) {
            Rat w = Rat(m) - M;
            Rat ex = base + t * w;
            if (ex >= bound) break;
            Coef c = coef_mul(Coef(negate ? -w : w), unity_root(w * dx));
            sb.add_exp(ex, c);
        }
    }
    // lattice region t = n + cx < 0, m < M, entering with opposite sign
    for (long n = to_long(rat_ceil(-cx)) - 1;; --n) {
        Rat t = Rat(n) + cx;
        Rat base = rat(ell, 2) * t * t;
        if (base >= bound) break;
        bool negate = (ell % 2 != 0) && (n % 2 != 0);
        for (long m = m_top - 1;; --m) {
            Rat w = Rat(m) - M;
            Rat ex = base + t * w;
            if (ex >= bound) break;
            Coef c = coef_mul(Coef(negate ? w : -w), unity_root(w * dx));
            sb.add_exp(ex, c);
        }
    }
    return sb.take();
}

Rat ord_dahat_cusp(long ell, const Rat& x, long c) {
    if (c < 0) c = -c;
    return order_branch(ell, Rat(c) * x);
}

Rat ord_weight2_comb_cusp(long ell, const Rat& x, long k, long a, long c) {
    if (k < 1) throw std::invalid_argument("ord_weight2_comb_cusp: positive k required");
    if (a < 0 || c < 0 || (a == 0 && c == 0) || gcd_long(a, c) != 1) {
        throw std::invalid_argument("ord_weight2_comb_cusp: cusp a/c in lowest terms required");
    }
    long g = gcd_long(k * a, c);
    long cp = (k * a) / g;
    return Rat(g) * Rat(g) * order_branch(ell, Rat(cp) * x) / Rat(k);
}

PSeries lambert_head(long p, long v) {
    if (v > 0 && 6 * v < p) {
        Rat c = rat(p - 6 * v, 2);
        return PSeries::monomial(Rat(-v), Coef(v % 2 != 0 ? -c : c));
    }
    if (v < p && 6 * v > 5 * p) {
        Rat c = rat(5 * p - 6 * v, 2);
        return PSeries::monomial(Rat(v - p), Coef(v % 2 != 0 ? -c : c));
    }
    return PSeries::zero();
}

Rat lambert_centering(long p, long v) {
    return (Rat(3 * v * (p - v)) - rat(p * p - 1, 12)) / Rat(2 * p);
}

PSeries lambert_head_centered(long p, long v) {
    if (6 * v < p) {
        Rat c = rat(p - 6 * v, 2);
        Rat ex = (Rat(v * (p - 3 * v)) - rat(p * p - 1, 12)) / Rat(2 * p);
        return PSeries::monomial(ex, Coef(v % 2 != 0 ? -c : c));
    }
    if (v < p && 6 * v > 5 * p) {
        Rat c = rat(5 * p - 6 * v, 2);
        Rat ex = (Rat((p - v) * (3 * v - 2 * p)) - rat(p * p - 1, 12)) / Rat(2 * p);
        return PSeries::monomial(ex, Coef(v % 2 != 0 ? -c : c));
    }
    return PSeries::zero();
}

PSeries lambert_block(long p, long v, const Rat& bound) {
    if (p < 2 || v < 0 || v >= p) throw std::invalid_argument("lambert_block: 0 <= v < p");
    PSeries euler_inv = euler_prod(p, bound).inverted();
    if (v == 0) {
        PSeries dbl = bilateral_pole_sum(p, 0, 2, true, bound);
        // 3 sum_{n>=1} n q^{pn}/(1-q^{pn}) = 3 sum_m sigma_1(m) q^{pm}
        SeriesBuilder lam(1);
        lam.set_bound(bound);
        for (long n = 1; Rat(p * n) < bound; ++n) {
            for (long r = 1; Rat(p * n * r) < bound; ++r) {
                lam.add_exp(Rat(p * n * r), Coef(Rat(3 * n)));
            }
        }
        PSeries inner = dbl + lam.take() + PSeries::monomial(Rat(0), Coef(rat(-1, 12)));
        return (inner * euler_inv).scaled(Coef(Rat(p)));
    }
    PSeries dbl = bilateral_pole_sum(p, v, 2, false, bound);
    PSeries sgl = bilateral_pole_sum(p, v, 1, false, bound);
    PSeries inner = dbl.scaled(Coef(Rat(p))) + sgl.scaled(Coef(rat(p - 6 * v, 2)));
    if (v % 2 != 0) inner = -inner;
    return lambert_head(p, v) + inner * euler_inv;
}

PSeries lambert_block_centered(long p, long v, const Rat& bound) {
    if (p < 2 || v < 0 || v >= p) {
        throw std::invalid_argument("lambert_block_centered: 0 <= v < p");
    }
    Rat sp = rat(p * p - 1, 24);
    if (v > 0) {
        Rat shift = (Rat(-3 * v * v) - 2 * sp) / Rat(2 * p);
        Rat B = bound - shift;
        TauChar uc{Rat(v), Rat(0)};
        PSeries dA = appell_dA(3, uc, TauChar{}, p, B);
        PSeries A = appell_A(3, uc, TauChar{}, p, B);
        PSeries inner = dA.scaled(Coef(Rat(p))) - A.scaled(Coef(Rat(3 * v)));
        if (v % 2 != 0) inner = -inner;
        return (inner * euler_prod(p, B).inverted()).shift(shift);
    }
    Rat shift = -sp / Rat(p);
    Rat B = bound - shift;
    PSeries punct = bilateral_pole_sum(p, 0, 3, true, B);
    long e2_terms = to_long(rat_ceil(B / Rat(p))) + 1;
    PSeries e2p = e2_expand(Rat(e2_terms)).scale_exponents(Rat(p)).truncated(B);
    PSeries inner = punct - e2p.scaled(Coef(rat(1, 8)))
                    - PSeries::monomial(Rat(0), Coef(rat(11, 24)));
    return (inner * euler_prod(p, B).inverted()).scaled(Coef(Rat(p))).shift(shift);
}

PSeries rank_parts_kernel(long p, long s, const Rat& bound) {
    if (p < 3 || s <= 0 || s >= p) throw std::invalid_argument("rank_parts_kernel: 0 < s < p");
    PSeries euler_inv = euler_prod(1, bound).inverted();
    PSeries acc = (s == 1) ? PSeries::monomial(Rat(0), Coef(rat(1, 2)))
                           : PSeries::zero();
    for (long j = 1; j < p; ++j) {
        PSeries dA = appell_dA(3, TauChar{Rat(0), rat(-j, p)}, TauChar{}, 1, bound);
        Coef w = coef_mul(unity_root(rat(j * (2 * s - 1), 2 * p)),
                          coef_add(Coef(Rat(1)), coef_neg(unity_root(rat(j, p)))));
        acc += (dA * euler_inv).scaled(coef_mul(w, Coef(rat(1, p))));
    }
    return acc;
}

PSeries crank_parts_kernel(long p, long s, const Rat& bound) {
    if (p < 3 || s <= 0 || s >= p) throw std::invalid_argument("crank_parts_kernel: 0 < s < p");
    PSeries euler_inv = euler_prod(1, bound).inverted();
    PSeries acc = PSeries::zero();
    for (long j = 1; j < p; ++j) {
        PSeries dA = appell_dA(1, TauChar{Rat(0), rat(-j, p)}, TauChar{}, 1, bound);
        Coef w = coef_mul(unity_root(rat(j * (2 * s - 1), 2 * p)),
                          coef_add(Coef(Rat(1)), coef_neg(unity_root(rat(j, p)))));
        acc += (dA * euler_inv).scaled(coef_mul(w, Coef(rat(1, p))));
    }
    return acc;
}

}  // namespace qrank
