#include <doctest.h>

#include "qrank/qseries.hpp"

using namespace qrank;

namespace {

PSeries jtp_sum(long k, long a, const Rat& E) {
    // (q^a, q^{k-a}, q^k; q^k)_inf = sum_n (-1)^n q^{k n(n-1)/2 + a n}
    SeriesBuilder sb(1);
    sb.set_bound(E);
    for (long n = -200; n <= 200; ++n) {
        Rat e = rat(k * n * (n - 1), 2) + Rat(a * n);
        if (e < E) sb.add_exp(e, Coef(Rat(n % 2 ? -1 : 1)));
    }
    return sb.take();
}

} // namespace

TEST_CASE("euler product has pentagonal-number coefficients") {
    PSeries f = euler_prod(1, Rat(30));
    std::map<long, long> expect = {{0, 1},  {1, -1},  {2, -1}, {5, 1},
                                   {7, 1},  {12, -1}, {15, -1}, {22, 1},
                                   {26, 1}};
    for (long n = 0; n < 30; ++n) {
        long e = expect.count(n) ? expect[n] : 0;
        CHECK(coef_rat(f.at(Rat(n))) == e);
    }
}

TEST_CASE("one_minus handles negative exponents by factoring the monomial") {
    PSeries f = one_minus(Coef(Rat(1)), Rat(-3));
    // 1 - q^{-3} exactly
    CHECK(coef_rat(f.at(Rat(-3))) == -1);
    CHECK(coef_rat(f.at(Rat(0))) == 1);
    CHECK(f.term_count() == 2);

    CHECK_THROWS_AS(one_minus(Coef(Rat(1)), Rat(0)), DegeneratePole);
    PSeries g = one_minus(Coef(Rat(2)), Rat(0));
    CHECK(coef_rat(g.at(Rat(0))) == -1);
}

TEST_CASE("triple product: theta_prod equals its bilateral sum") {
    for (auto [k, a] : {std::pair<long, long>{5, 1}, {5, 2}, {7, 1}, {7, 2}, {7, 3}, {25, 5}, {49, 21}}) {
        PSeries prod = theta_prod(k, a, Rat(60));
        PSeries sum = jtp_sum(k, a, Rat(60));
        auto m = first_mismatch(prod, sum);
        CAPTURE(k);
        CAPTURE(a);
        CHECK_FALSE(m.has_value());
    }
}

TEST_CASE("classic eta spec expands with the q^{m/24} prefactor") {
    PSeries f = eta_expand(EtaSpec::classic(1), Rat(10));
    CHECK(coef_rat(f.at(rat(1, 24))) == 1);
    CHECK(coef_rat(f.at(rat(25, 24))) == -1);
    CHECK(coef_rat(f.at(rat(49, 24))) == -1);
    CHECK(coef_rat(f.at(rat(121, 24))) == 1);

    PSeries f5 = eta_expand(EtaSpec::classic(5), Rat(10));
    CHECK(coef_rat(f5.at(rat(5, 24))) == 1);
    CHECK(coef_rat(f5.at(rat(125, 24))) == -1);
}

TEST_CASE("generalized eta spec symmetry in d -> p - d") {
    PSeries a = eta_expand(EtaSpec::generalized(5, 1), Rat(12));
    PSeries b = eta_expand(EtaSpec::generalized(5, 4), Rat(12));
    CHECK_FALSE(first_mismatch(a, b).has_value());

    // leading exponent is (p/2) P2(d/p)
    PSeries c = eta_expand(EtaSpec::generalized(7, 2), Rat(12));
    Rat x = rat(2, 7);
    Rat e0 = rat(7, 2) * (x * x - x + rat(1, 6));
    CHECK(c.valuation().value() == e0);
    CHECK(coef_rat(c.at(e0)) == 1);
}

TEST_CASE("theta with characteristics: product form equals defining sum") {
    struct Case { Rat r, s; long mult; };
    std::vector<Case> cases = {
        {rat(1, 3), rat(1, 4), 2},
        {rat(0, 1), rat(1, 2), 1},
        {rat(1, 2), rat(1, 2), 1},
        {rat(2, 5), rat(3, 7), 3},
        {rat(-1, 3), rat(1, 6), 1},
        {rat(7, 5), rat(-2, 3), 2},
        {rat(1, 2), rat(0, 1), 5},
    };
    for (const auto& c : cases) {
        PSeries prod = theta_char(c.r, c.s, c.mult, Rat(9));
        PSeries sum = theta_char_sum(c.r, c.s, c.mult, Rat(9));
        CAPTURE(rat_str(c.r));
        CAPTURE(rat_str(c.s));
        CAPTURE(c.mult);
        auto m = first_mismatch(prod, sum);
        if (m) {
            CAPTURE(rat_str(*m));
            CHECK(coef_eq(prod.at(*m), sum.at(*m)));
        }
        CHECK_FALSE(m.has_value());
    }
}

TEST_CASE("theta at a lattice point degenerates") {
    CHECK_THROWS_AS(theta_char(Rat(0), Rat(0), 1, Rat(5)), DegeneratePole);
    CHECK_THROWS_AS(theta_char(Rat(2), Rat(-3), 4, Rat(5)), DegeneratePole);
}

TEST_CASE("E2 q-expansion") {
    PSeries f = e2_expand(Rat(7));
    long expect[] = {1, -24, -72, -96, -168, -144, -288};
    for (long n = 0; n < 7; ++n) CHECK(coef_rat(f.at(Rat(n))) == expect[n]);
}

TEST_CASE("universal mock theta g at the arguments the dissections use") {
    // frozen from an independent symbolic computation
    PSeries g15 = mocktheta_g(1, 5, Rat(14));
    long e15[] = {0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 5, 5};
    for (long n = -1; n < 14; ++n) CHECK(coef_rat(g15.at(Rat(n))) == e15[n + 1]);

    PSeries g25 = mocktheta_g(2, 5, Rat(14));
    long e25[] = {0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 3, 2, 4, 3};
    for (long n = -2; n < 14; ++n) CHECK(coef_rat(g25.at(Rat(n))) == e25[n + 2]);

    PSeries g5_25 = mocktheta_g(5, 25, Rat(14));
    for (long n = -5; n < 14; ++n) {
        Rat expect = (n >= 0 && n % 5 == 0) ? Rat(1) : Rat(0);
        CHECK(coef_rat(g5_25.at(Rat(n))) == expect);
    }

    // q^5 g(q^5, q^25) from the scaled small-argument series
    PSeries lifted = mocktheta_g(1, 5, Rat(3)).scale_exponents(Rat(5)).shift(Rat(5));
    PSeries direct = mocktheta_g(5, 25, Rat(15)).shift(Rat(5)).truncated(Rat(15));
    CHECK_FALSE(first_mismatch(lifted.truncated(Rat(15)), direct).has_value());
}
