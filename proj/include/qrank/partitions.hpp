#pragma once

// Partition statistics: rank and crank residue counts together with their
// weighted companions (total parts per rank class, total ones per crank
// class).  Two independent oracles fill the same tables: direct enumeration
// of all partitions, and generating-function dynamic programming working in
// the group ring Z[Z/m].  Tests hold the two against each other.
//
// Conventions, with lambda a partition of n:
//   rank  = largest part - number of parts
//   crank = largest part if lambda has no ones, otherwise
//           #(parts larger than the number of ones) - (number of ones)
//   (the unique partition of 1 carries crank -1)

#include "qrank/pseries.hpp"

#include <string>
#include <vector>

namespace qrank {

// p(0..n_max) by the pentagonal-number recurrence
std::vector<Int> partition_counts(long n_max);

// visit every partition of n as an ascending array of parts
void visit_partitions(long n, const std::function<void(const long*, long)>& f);

enum class PartStat { RankCount, CrankCount, RankParts, CrankOnes };

struct StatTable {
    long modulus = 0;
    long n_max = 0;          // rows complete for 0 <= n <= n_max
    std::string oracle;      // "enumeration" or "gf-dp"
    // [n][residue]
    std::vector<std::vector<Int>> rank_count;  // N(r, m, n)
    std::vector<std::vector<Int>> crank_count; // M(r, m, n)
    std::vector<std::vector<Int>> rank_parts;  // NT(r, m, n)
    std::vector<std::vector<Int>> crank_ones;  // M_omega(r, m, n)

    const std::vector<std::vector<Int>>& table(PartStat s) const;
    const Int& at(PartStat s, long r, long n) const;
};

// oracle is "enumeration" (practical to a few hundred) or "gf-dp"
StatTable stat_tables(long m, long n_max, const std::string& oracle);

// "stat,modulus,residue,n,count" rows, header included
std::string stat_csv(const StatTable& t);

// sum_n S(r, m, n) q^n, complete below n_max + 1
PSeries stat_series(const StatTable& t, PartStat s, long r);

// sum_n [S(r, m, n) - S(m - r, m, n)] q^n
PSeries stat_diff_series(const StatTable& t, PartStat s, long r);

// sum_n [S(r, m, n) - p(n)/m] q^n, the deviation from equidistribution
PSeries stat_dev_series(const StatTable& t, PartStat s, long r);

} // namespace qrank
