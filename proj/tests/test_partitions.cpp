#include <doctest.h>

#include "qrank/partitions.hpp"

using namespace qrank;

TEST_CASE("partition counts match the classic table") {
    auto p = partition_counts(100);
    CHECK(p[0] == 1);
    CHECK(p[1] == 1);
    CHECK(p[5] == 7);
    CHECK(p[10] == 42);
    CHECK(p[20] == 627);
    CHECK(p[50] == 204226);
    CHECK(p[100] == 190569292);
}

TEST_CASE("partition enumeration visits p(n) partitions") {
    auto p = partition_counts(25);
    for (long n : {0L, 1L, 7L, 15L, 25L}) {
        long count = 0;
        visit_partitions(n, [&](const long*, long) { ++count; });
        CHECK(Int(count) == p[static_cast<size_t>(n)]);
    }
}

TEST_CASE("rank residue counts at n = 4 are equidistributed mod 5") {
    auto t = stat_tables(5, 4, "enumeration");
    for (long r = 0; r < 5; ++r) CHECK(t.at(PartStat::RankCount, r, 4) == 1);
}

TEST_CASE("frozen small values of the weighted statistics") {
    auto t = stat_tables(5, 6, "enumeration");

    long nt5[] = {3, 7, 2, 4, 4};
    for (long r = 0; r < 5; ++r) CHECK(t.at(PartStat::RankParts, r, 5) == nt5[r]);

    CHECK(t.at(PartStat::RankParts, 2, 6) - t.at(PartStat::RankParts, 3, 6) == 1);
    CHECK(t.at(PartStat::CrankOnes, 2, 6) - t.at(PartStat::CrankOnes, 3, 6) == 1);

    Int weighted = 0;
    for (long r = 0; r < 5; ++r) weighted += r * t.at(PartStat::RankParts, r, 6);
    CHECK(weighted == 65);
}

TEST_CASE("crank of the partition of 1 is -1") {
    for (const char* oracle : {"enumeration", "gf-dp"}) {
        auto t = stat_tables(5, 1, oracle);
        CAPTURE(oracle);
        CHECK(t.at(PartStat::CrankCount, -1, 1) == 1);
        CHECK(t.at(PartStat::CrankCount, 0, 1) == 0);
        CHECK(t.at(PartStat::CrankCount, 1, 1) == 0);
    }
}

TEST_CASE("enumeration and gf-dp oracles agree on every table") {
    for (long m : {5L, 7L, 11L}) {
        auto a = stat_tables(m, 40, "enumeration");
        auto b = stat_tables(m, 40, "gf-dp");
        for (auto s : {PartStat::RankCount, PartStat::CrankCount,
                       PartStat::RankParts, PartStat::CrankOnes})
            for (long n = 0; n <= 40; ++n)
                for (long r = 0; r < m; ++r) {
                    CAPTURE(m);
                    CAPTURE(static_cast<int>(s));
                    CAPTURE(n);
                    CAPTURE(r);
                    REQUIRE(a.at(s, r, n) == b.at(s, r, n));
                }
    }
}

TEST_CASE("residue classes sum to the plain totals") {
    auto t = stat_tables(7, 30, "gf-dp");
    auto p = partition_counts(30);
    for (long n = 0; n <= 30; ++n) {
        Int nsum = 0, msum = 0;
        for (long r = 0; r < 7; ++r) {
            nsum += t.at(PartStat::RankCount, r, n);
            msum += t.at(PartStat::CrankCount, r, n);
        }
        CHECK(nsum == p[static_cast<size_t>(n)]);
        CHECK(msum == p[static_cast<size_t>(n)]);
    }
}

TEST_CASE("series extraction and csv dump") {
    auto t = stat_tables(5, 6, "enumeration");
    PSeries d = stat_diff_series(t, PartStat::RankParts, 2);
    CHECK(d.bound() == 7);
    CHECK(coef_rat(d.at(Rat(6))) == 1);   // NT(2,5,6) - NT(3,5,6)
    CHECK(coef_rat(d.at(Rat(5))) == -2);  // 2 - 4

    PSeries s = stat_series(t, PartStat::RankCount, 0);
    CHECK(coef_rat(s.at(Rat(4))) == 1);

    std::string csv = stat_csv(t);
    CHECK(csv.find("stat,modulus,residue,n,count\n") == 0);
    CHECK(csv.find("NT,5,2,6,7") != std::string::npos);
    CHECK(csv.find("MW,5,") != std::string::npos);
}
