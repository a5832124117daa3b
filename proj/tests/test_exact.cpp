#include <doctest.h>

#include "qrank/cyclotomic.hpp"
#include "qrank/pseries.hpp"

using namespace qrank;

TEST_CASE("rational helpers") {
    CHECK(rat(6, 4) == rat(3, 2));
    CHECK(rat_floor(rat(7, 2)) == 3);
    CHECK(rat_floor(rat(-7, 2)) == -4);
    CHECK(rat_ceil(rat(7, 2)) == 4);
    CHECK(rat_ceil(rat(-7, 2)) == -3);
    CHECK(rat_str(rat(-3, 6)) == "-1/2");
    CHECK(rat_str(rat(4, 2)) == "2");
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(49) == 42);
    CHECK(lcm_long(24, 10) == 120);
}

TEST_CASE("kronecker symbol mod 12 character") {
    // (12|n) is the even character picking out n = +-1 mod 12
    auto chi12 = [](long n) { return kronecker(12, n); };
    CHECK(chi12(1) == 1);
    CHECK(chi12(5) == -1);
    CHECK(chi12(7) == -1);
    CHECK(chi12(11) == 1);
    CHECK(chi12(13) == 1);
    CHECK(chi12(2) == 0);
    CHECK(chi12(3) == 0);
}

TEST_CASE("cyclotomic polynomial cache") {
    const auto& p1 = detail::cyclotomic_poly(1);
    CHECK(p1 == std::vector<Int>{Int(-1), Int(1)});
    const auto& p6 = detail::cyclotomic_poly(6);
    CHECK(p6 == std::vector<Int>{Int(1), Int(-1), Int(1)});
    const auto& p12 = detail::cyclotomic_poly(12);
    CHECK(p12 == std::vector<Int>{Int(1), Int(0), Int(-1), Int(0), Int(1)});
    CHECK(detail::cyclotomic_poly(49).size() == 43);
}

TEST_CASE("roots of unity relations") {
    // sum of all 5th roots of unity vanishes
    Cyc s = Cyc(Rat(0));
    for (long k = 0; k < 5; ++k) s += Cyc::zeta_pow(5, k);
    CHECK(s.is_zero());

    // zeta_12^6 = -1
    Cyc z6 = Cyc::zeta_pow(12, 6);
    CHECK(z6.is_rational());
    CHECK(z6.to_rat() == -1);

    // zeta_8^2 = zeta_4
    CHECK(Cyc::zeta_pow(8, 2) == Cyc::zeta_pow(4, 1));

    // cross-conductor identity zeta_3 = zeta_12^4
    CHECK(Cyc::zeta_pow(3, 1) == Cyc::zeta_pow(12, 4));

    // negative powers wrap
    CHECK(Cyc::zeta_pow(7, -1) == Cyc::zeta_pow(7, 6));
}

TEST_CASE("cyclotomic field arithmetic") {
    Cyc z = Cyc::zeta_pow(5, 1);
    Cyc x = Cyc(Rat(1)) + z;                    // 1 + zeta_5
    Cyc y = x.inverse();
    CHECK(x * y == Cyc(Rat(1)));

    // inverse of a root of unity is its conjugate power
    CHECK(z.inverse() == Cyc::zeta_pow(5, 4));

    // conductor is preserved, not minimized
    Cyc two = Cyc::zeta_pow(12, 0) + Cyc::zeta_pow(12, 0);
    CHECK(two.conductor() == 12);
    CHECK(two.is_rational());
    CHECK(two.to_rat() == 2);

    CHECK_THROWS_AS(Cyc::zeta_pow(5, 1).to_rat(), NotRational);
    CHECK_THROWS_AS(Cyc(Rat(0)).inverse(), std::domain_error);

    // 1 + zeta_3 + zeta_3^2 = 0 inside conductor 12
    Cyc t = Cyc(Rat(1)) + Cyc::zeta_pow(12, 4) + Cyc::zeta_pow(12, 8);
    CHECK(t.is_zero());

    CHECK(Cyc::zeta_pow(24, 5).str() == "[0,0,0,0,0,1,0,0]@24");
}

TEST_CASE("series basics and truncation bounds") {
    PSeries one = PSeries::one();
    CHECK_FALSE(one.bounded());
    CHECK(coef_rat(one.at(Rat(0))) == 1);
    CHECK(coef_rat(one.at(Rat(5))) == 0);

    // 1/(1-q) as a truncated geometric series
    PSeries f = PSeries::one() - PSeries::monomial(Rat(1), Coef(Rat(1)));
    PSeries g = f.truncated(Rat(10)).inverted();
    CHECK(g.bounded());
    CHECK(g.bound() == 10);
    for (long n = 0; n < 10; ++n) CHECK(coef_rat(g.at(Rat(n))) == 1);
    CHECK_THROWS_AS(g.at(Rat(10)), std::out_of_range);

    // inverting an exact polynomial demands a bound
    CHECK_THROWS_AS(f.inverted(), std::domain_error);
}

TEST_CASE("product bound is min(E1 + val2, E2 + val1)") {
    PSeries a = PSeries::one().truncated(Rat(5));                        // complete below 5
    PSeries b = PSeries::monomial(Rat(2), Coef(Rat(1)))
              + PSeries::monomial(Rat(3), Coef(Rat(1)));                 // exact q^2 + q^3
    PSeries ab = a * b;
    CHECK(ab.bounded());
    CHECK(ab.bound() == 7);

    PSeries c = b.truncated(Rat(9));
    PSeries ac = a * c; // min(5 + 2, 9 + 0) = 7
    CHECK(ac.bound() == 7);
}

TEST_CASE("inverse with negative valuation shrinks the bound twice over") {
    // a = q^{-1} (1 - q), complete below 4: inverse complete below 4 - 2(-1) = 6
    PSeries a = (PSeries::monomial(Rat(-1), Coef(Rat(1))) - PSeries::one()).truncated(Rat(4));
    PSeries inv = a.inverted();
    CHECK(inv.bound() == 6);
    CHECK(coef_rat(inv.at(Rat(1))) == 1);
    CHECK(coef_rat(inv.at(Rat(2))) == 1);
    CHECK(coef_rat(inv.at(Rat(5))) == 1);
}

TEST_CASE("inverse respects sparse exponent steps") {
    PSeries f = PSeries::one()
              - PSeries::monomial(Rat(5), Coef(Rat(1)));
    PSeries inv = f.truncated(Rat(23)).inverted();
    for (long n = 0; n < 23; ++n) {
        Rat expect = (n % 5 == 0) ? Rat(1) : Rat(0);
        CHECK(coef_rat(inv.at(Rat(n))) == expect);
    }
}

TEST_CASE("exponent scaling, shifting, q d/dq") {
    PSeries f = PSeries::monomial(Rat(1), Coef(Rat(3)))
              + PSeries::monomial(Rat(2), Coef(Rat(-1)));
    PSeries h = f.scale_exponents(Rat(5));
    CHECK(coef_rat(h.at(Rat(5))) == 3);
    CHECK(coef_rat(h.at(Rat(10))) == -1);

    PSeries fr = f.scale_exponents(rat(1, 5));
    CHECK(coef_rat(fr.at(rat(1, 5))) == 3);
    CHECK(fr.denom() == 5);

    PSeries sh = f.shift(rat(-1, 2));
    CHECK(coef_rat(sh.at(rat(1, 2))) == 3);
    CHECK(coef_rat(sh.at(rat(3, 2))) == -1);

    PSeries d = sh.qd_dq();
    CHECK(coef_rat(d.at(rat(1, 2))) == rat(3, 2));
    CHECK(coef_rat(d.at(rat(3, 2))) == rat(-3, 2));
}

TEST_CASE("mixed rational and cyclotomic coefficients") {
    PSeries f = PSeries::monomial(Rat(0), Coef(Cyc::zeta_pow(3, 1)))
              + PSeries::monomial(Rat(0), Coef(Cyc::zeta_pow(3, 2)))
              + PSeries::monomial(Rat(1), Coef(Rat(2)));
    // zeta_3 + zeta_3^2 = -1 stays cyclotomic in representation but equals a rational
    Coef c0 = f.at(Rat(0));
    CHECK(coef_is_rational(c0));
    CHECK(coef_rat(c0) == -1);
    CHECK(f.all_rational());
}

TEST_CASE("first_mismatch finds the earliest disagreement below both bounds") {
    PSeries a = PSeries::one() + PSeries::monomial(Rat(3), Coef(Rat(4)));
    PSeries b = PSeries::one() + PSeries::monomial(Rat(3), Coef(Rat(5)));
    auto m = first_mismatch(a.truncated(Rat(10)), b.truncated(Rat(8)));
    REQUIRE(m.has_value());
    CHECK(*m == 3);

    auto ok = first_mismatch(a.truncated(Rat(3)), b.truncated(Rat(10)));
    CHECK_FALSE(ok.has_value());

    PSeries c = PSeries::monomial(rat(1, 2), Coef(Rat(1)));
    auto half = first_mismatch(c, PSeries::zero());
    REQUIRE(half.has_value());
    CHECK(*half == rat(1, 2));
}

TEST_CASE("dump format: exponent TAB coefficient") {
    PSeries f = PSeries::monomial(rat(-1, 2), Coef(Rat(1)))
              + PSeries::monomial(Rat(2), Coef(rat(-3, 7)));
    CHECK(f.dump() == "-1/2\t1\n2\t-3/7\n");

    PSeries g = PSeries::monomial(Rat(1), Coef(Cyc::zeta_pow(4, 1)));
    CHECK(g.dump() == "1\t[0,1]@4\n");
}

TEST_CASE("series builder accumulates terms") {
    SeriesBuilder sb(2);
    sb.add_exp(rat(1, 2), Coef(Rat(1)));
    sb.add_exp(rat(1, 2), Coef(Rat(2)));
    sb.add_exp(Rat(1), Coef(Rat(-1)));
    sb.set_bound(Rat(4));
    PSeries s = sb.take();
    CHECK(coef_rat(s.at(rat(1, 2))) == 3);
    CHECK(coef_rat(s.at(Rat(1))) == -1);
    CHECK(s.bound() == 4);
}
