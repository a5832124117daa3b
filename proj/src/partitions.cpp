#include "qrank/partitions.hpp"

#include <algorithm>
#include <sstream>

namespace qrank {

std::vector<Int> partition_counts(long n_max) {
    std::vector<Int> p(static_cast<size_t>(n_max) + 1);
    p[0] = 1;
    for (long n = 1; n <= n_max; ++n) {
        Int acc = 0;
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2;
            long g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            Int term = 0;
            if (g1 <= n) term += p[static_cast<size_t>(n - g1)];
            if (g2 <= n) term += p[static_cast<size_t>(n - g2)];
            if (k % 2)
                acc += term;
            else
                acc -= term;
        }
        p[static_cast<size_t>(n)] = acc;
    }
    return p;
}

void visit_partitions(long n, const std::function<void(const long*, long)>& f) {
    if (n == 0) {
        f(nullptr, 0);
        return;
    }
    // Kelleher's ascending-composition generator; at each visit the
    // partition occupies a[0..k] in ascending order
    std::vector<long> a(static_cast<size_t>(n) + 1, 0);
    long k = 1;
    a[1] = n;
    while (k != 0) {
        long x = a[static_cast<size_t>(k - 1)] + 1;
        long y = a[static_cast<size_t>(k)] - 1;
        --k;
        while (x <= y) {
            a[static_cast<size_t>(k)] = x;
            y -= x;
            ++k;
        }
        a[static_cast<size_t>(k)] = x + y;
        f(a.data(), k + 1);
    }
}

const std::vector<std::vector<Int>>& StatTable::table(PartStat s) const {
    switch (s) {
        case PartStat::RankCount: return rank_count;
        case PartStat::CrankCount: return crank_count;
        case PartStat::RankParts: return rank_parts;
        default: return crank_ones;
    }
}

const Int& StatTable::at(PartStat s, long r, long n) const {
    r %= modulus;
    if (r < 0) r += modulus;
    return table(s)[static_cast<size_t>(n)][static_cast<size_t>(r)];
}

namespace {

using Grid = std::vector<std::vector<Int>>; // [n][residue]

Grid make_grid(long n_max, long m) {
    return Grid(static_cast<size_t>(n_max) + 1, std::vector<Int>(static_cast<size_t>(m)));
}

// multiply by 1/(1 - z^{zs} q^j) in place
void apply_geom(Grid& g, long j, long zs, long n_max, long m) {
    zs = ((zs % m) + m) % m;
    for (long n = j; n <= n_max; ++n)
        for (long r = 0; r < m; ++r)
            g[static_cast<size_t>(n)][static_cast<size_t>(r)] +=
                g[static_cast<size_t>(n - j)][static_cast<size_t>((r - zs + m) % m)];
}

// multiply by (1 - z^{zs} q^j) in place
void apply_poly(Grid& g, long j, long zs, long n_max, long m) {
    zs = ((zs % m) + m) % m;
    for (long n = n_max; n >= j; --n)
        for (long r = 0; r < m; ++r)
            g[static_cast<size_t>(n)][static_cast<size_t>(r)] -=
                g[static_cast<size_t>(n - j)][static_cast<size_t>((r - zs + m) % m)];
}

void shift_q(Grid& g, long j, long n_max, long m) {
    for (long n = n_max; n >= 0; --n)
        for (long r = 0; r < m; ++r)
            g[static_cast<size_t>(n)][static_cast<size_t>(r)] =
                n >= j ? g[static_cast<size_t>(n - j)][static_cast<size_t>(r)] : Int(0);
}

void fill_by_enumeration(StatTable& t) {
    long m = t.modulus, n_max = t.n_max;
    for (long n = 0; n <= n_max; ++n) {
        visit_partitions(n, [&](const long* parts, long k) {
            long largest = k ? parts[k - 1] : 0;
            long rank = largest - k;
            long ones = 0;
            while (ones < k && parts[ones] == 1) ++ones;
            long crank;
            if (ones == 0) {
                crank = largest;
            } else {
                const long* first_gt = std::upper_bound(parts, parts + k, ones);
                long cnt_gt = k - static_cast<long>(first_gt - parts);
                crank = cnt_gt - ones;
            }
            long rr = ((rank % m) + m) % m;
            long cr = ((crank % m) + m) % m;
            auto nn = static_cast<size_t>(n);
            t.rank_count[nn][static_cast<size_t>(rr)] += 1;
            t.crank_count[nn][static_cast<size_t>(cr)] += 1;
            t.rank_parts[nn][static_cast<size_t>(rr)] += k;
            t.crank_ones[nn][static_cast<size_t>(cr)] += ones;
        });
    }
}

void fill_by_gf(StatTable& t) {
    long m = t.modulus, n_max = t.n_max;

    // rank and rank-parts through the Durfee-square decomposition:
    //   R(z;q) = sum_d q^{d^2} prod_{j<=d} 1/((1-z q^j)(1-z^{-1} q^j))
    // and the parts count is d plus the number of parts below the square,
    // marked by T_d = sum_{j<=d} z^{-1} q^j / (1 - z^{-1} q^j).
    {
        Grid cur = make_grid(n_max, m);
        cur[0][0] = 1; // d = 0 term: the empty partition
        Grid scur = make_grid(n_max, m);
        t.rank_count[0][0] = 1;
        for (long d = 1; d * d <= n_max; ++d) {
            shift_q(cur, 2 * d - 1, n_max, m);
            apply_geom(cur, d, +1, n_max, m);
            apply_geom(cur, d, -1, n_max, m);
            shift_q(scur, 2 * d - 1, n_max, m);
            apply_geom(scur, d, +1, n_max, m);
            apply_geom(scur, d, -1, n_max, m);
            // scur += cur * z^{-i} q^{d i} for i >= 1
            for (long i = 1; d * i <= n_max; ++i)
                for (long n = d * i; n <= n_max; ++n)
                    for (long r = 0; r < m; ++r)
                        scur[static_cast<size_t>(n)][static_cast<size_t>(r)] +=
                            cur[static_cast<size_t>(n - d * i)]
                               [static_cast<size_t>((r + i) % m)];
            for (long n = 0; n <= n_max; ++n)
                for (long r = 0; r < m; ++r) {
                    t.rank_count[static_cast<size_t>(n)][static_cast<size_t>(r)] +=
                        cur[static_cast<size_t>(n)][static_cast<size_t>(r)];
                    t.rank_parts[static_cast<size_t>(n)][static_cast<size_t>(r)] +=
                        d * cur[static_cast<size_t>(n)][static_cast<size_t>(r)] +
                        scur[static_cast<size_t>(n)][static_cast<size_t>(r)];
                }
        }
    }

    // crank: (q;q)_inf / ((zq;q)_inf (z^{-1}q;q)_inf), with the n = 1 row
    // replaced by the combinatorial value (crank of {1} is -1)
    {
        Grid g = make_grid(n_max, m);
        g[0][0] = 1;
        for (long j = 1; j <= n_max; ++j) {
            apply_poly(g, j, 0, n_max, m);
            apply_geom(g, j, +1, n_max, m);
            apply_geom(g, j, -1, n_max, m);
        }
        t.crank_count = g;
        if (n_max >= 1) {
            std::fill(t.crank_count[1].begin(), t.crank_count[1].end(), Int(0));
            t.crank_count[1][static_cast<size_t>(m - 1)] = 1;
        }
    }

    // ones per crank class: a partition with w >= 1 ones has crank
    // #(parts > w) - w, so condition on w:
    //   sum_w w q^w z^{-w} prod_{2<=j<=w} (1-q^j)^{-1} prod_{j>w} (1-z q^j)^{-1}
    {
        Grid P = make_grid(n_max, m);
        P[0][0] = 1;
        for (long j = 2; j <= n_max; ++j) apply_geom(P, j, +1, n_max, m); // w = 1 state
        for (long w = 1; w <= n_max; ++w) {
            for (long n = w; n <= n_max; ++n)
                for (long r = 0; r < m; ++r)
                    t.crank_ones[static_cast<size_t>(n)][static_cast<size_t>(r)] +=
                        w * P[static_cast<size_t>(n - w)][static_cast<size_t>((r + w) % m)];
            if (w + 1 <= n_max) {
                apply_poly(P, w + 1, +1, n_max, m);
                apply_geom(P, w + 1, 0, n_max, m);
            }
        }
    }
}

} // namespace

StatTable stat_tables(long m, long n_max, const std::string& oracle) {
    if (m < 2) throw std::invalid_argument("stat_tables: modulus must be >= 2");
    StatTable t;
    t.modulus = m;
    t.n_max = n_max;
    t.oracle = oracle;
    t.rank_count = make_grid(n_max, m);
    t.crank_count = make_grid(n_max, m);
    t.rank_parts = make_grid(n_max, m);
    t.crank_ones = make_grid(n_max, m);
    if (oracle == "enumeration")
        fill_by_enumeration(t);
    else if (oracle == "gf-dp")
        fill_by_gf(t);
    else
        throw std::invalid_argument("stat_tables: unknown oracle " + oracle);
    return t;
}

std::string stat_csv(const StatTable& t) {
    std::ostringstream os;
    os << "stat,modulus,residue,n,count\n";
    const char* names[] = {"N", "M", "NT", "MW"};
    const PartStat stats[] = {PartStat::RankCount, PartStat::CrankCount,
                              PartStat::RankParts, PartStat::CrankOnes};
    for (int s = 0; s < 4; ++s)
        for (long r = 0; r < t.modulus; ++r)
            for (long n = 0; n <= t.n_max; ++n)
                os << names[s] << ',' << t.modulus << ',' << r << ',' << n << ','
                   << t.at(stats[s], r, n).get_str() << '\n';
    return os.str();
}

PSeries stat_series(const StatTable& t, PartStat s, long r) {
    SeriesBuilder sb(1);
    sb.set_bound(Rat(t.n_max + 1));
    for (long n = 0; n <= t.n_max; ++n)
        sb.add_exp(Rat(n), Coef(Rat(t.at(s, r, n))));
    return sb.take();
}

PSeries stat_diff_series(const StatTable& t, PartStat s, long r) {
    SeriesBuilder sb(1);
    sb.set_bound(Rat(t.n_max + 1));
    for (long n = 0; n <= t.n_max; ++n) {
        Int d = t.at(s, r, n) - t.at(s, t.modulus - r, n);
        sb.add_exp(Rat(n), Coef(Rat(d)));
    }
    return sb.take();
}

PSeries stat_dev_series(const StatTable& t, PartStat s, long r) {
    auto pc = partition_counts(t.n_max);
    SeriesBuilder sb(1);
    sb.set_bound(Rat(t.n_max + 1));
    for (long n = 0; n <= t.n_max; ++n)
        sb.add_exp(Rat(n), Coef(Rat(t.at(s, r, n)) - rat(pc[n], Int(t.modulus))));
    return sb.take();
}

} // namespace qrank
