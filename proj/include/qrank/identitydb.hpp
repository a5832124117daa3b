#pragma once

// Catalogue of verifiable claims about partition-statistic q-series, loaded
// from a JSON database, together with exact checkers that either confirm a
// claim to its stated bound or produce a concrete refutation witness.
//
// Claim kinds:
//   remainder        dissected rank-parts / crank-ones difference, normalized
//                    by the theta-quotient prefactor, equals a stated Laurent
//                    polynomial in the level-p hauptmodul t
//   deviation        a rank/crank count deviation sum equals a stated
//                    combination of eta-type infinite products
//   weighted-diff    a weighted combination of rank-parts differences on an
//                    arithmetic progression equals a stated eta quotient
//   series-equality  two stated eta-type expressions agree
//   scan             a weighted combination of statistics on a progression
//                    vanishes (or vanishes mod m) for all n up to a bound
//   equipartition    a statistic splits p(pn + k) into p equal classes
//
// A row may carry expect_hold = false: the claim is recorded as refutable on
// purpose and the checker passes exactly when it finds a witness.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrank/dissection.hpp"
#include "qrank/partitions.hpp"
#include "qrank/pseries.hpp"

namespace qrank {

struct DbError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One summand of an eta-type expression: coef * q^qpow * prod J * [g].
// A jfactor {m, a, pow} is J_{m,a}^pow for a > 0 and (q^m; q^m)_inf^pow for
// a = 0; g = {a, b} multiplies by the third-order series g(q^a, q^b).
struct EtaGTerm {
    Rat coef;
    long qpow = 0;
    std::vector<std::array<long, 3>> jfactors;
    std::optional<std::array<long, 2>> g;
};

// Expand a sum of EtaGTerms, complete strictly below E
PSeries eta_terms_expand(const std::vector<EtaGTerm>& terms, const Rat& E);

struct RemainderRow {
    std::string id;
    long p = 0, s = 0, k = 0;
    PartStat statistic = PartStat::RankParts;   // RankParts or CrankOnes
    long gexp = 0;                              // recorded prefactor exponent
    std::map<long, Rat> poly;                   // Laurent polynomial in t
    long check_bound = 0;                       // compare through q^check_bound
};

struct DeviationRow {
    std::string id;
    PartStat statistic = PartStat::RankCount;   // RankCount or CrankCount
    long modulus = 0;
    std::vector<long> residues;
    long start = 0;                             // compare from q^start
    long check_bound = 0;                       // ... through q^check_bound
    std::vector<EtaGTerm> terms;
};

struct WeightedDiffRow {
    std::string id;
    PartStat statistic = PartStat::RankParts;
    long p = 0, k = 0;
    std::map<long, Rat> weights;                // s -> weight on S(s) - S(p-s)
    long check_bound = 0;
    std::vector<EtaGTerm> rhs;
    bool expect_hold = true;
    std::string note;
};

struct SeriesEqualityRow {
    std::string id;
    std::vector<EtaGTerm> lhs, rhs;
    long check_bound = 0;
};

struct ScanCombo {
    PartStat statistic = PartStat::RankParts;
    std::map<long, Rat> weights;                // residue -> weight
};

struct ScanRow {
    std::string id;
    long p = 0, k = 0;
    long modulus = 0;                           // 0 means: exactly zero
    long max_n = 0;
    std::vector<ScanCombo> combos;
    bool expect_hold = true;
};

struct EquipartitionRow {
    std::string id;
    PartStat statistic = PartStat::RankCount;
    long p = 0, k = 0, max_n = 0;
};

struct IdentityDb {
    std::vector<RemainderRow> remainders;
    std::vector<DeviationRow> deviations;
    std::vector<WeightedDiffRow> weighted_diffs;
    std::vector<SeriesEqualityRow> equalities;
    std::vector<ScanRow> scans;
    std::vector<EquipartitionRow> equipartitions;

    bool has(const std::string& id) const;
};

// Parse the JSON database; throws DbError on malformed input
IdentityDb load_identity_db(const std::string& path);

struct CheckResult {
    std::string id;
    std::string kind;
    bool expect_hold = true;
    bool holds = false;
    std::string witness;   // empty when the claim holds
    std::string bound;     // human-readable statement of the range checked
    bool passed() const { return holds == expect_hold; }
};

// Remainder rows allow choosing the computation route; everything else is
// enumeration-backed by construction.
CheckResult check_remainder(const RemainderRow& row, Route route = Route::enumeration);
CheckResult check_deviation(const DeviationRow& row, const std::string& oracle = "gf-dp");
CheckResult check_weighted_diff(const WeightedDiffRow& row);
CheckResult check_series_equality(const SeriesEqualityRow& row);
CheckResult check_scan(const ScanRow& row, long max_n_override = -1,
                       const std::string& oracle = "gf-dp");
CheckResult check_equipartition(const EquipartitionRow& row, long max_n_override = -1,
                                const std::string& oracle = "gf-dp");

struct UnknownTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Named series for inspection dumps.  Grammar:
//   t@p                hauptmodul of X_1(p), p in {5, 7}
//   D(r,m)  Dc(r,m)    rank / crank count deviation for residue r mod m
//   D(r,m,k)           ... restricted to exponents = k mod m, reindexed
//   L(p,v)  L_p(v)     Lambert-type block
//   F(p,s)  Fc(p,s)    rank-parts / crank-ones dissection kernel
//   N(p,s,k) M(p,s,k)  dissected remainder series (enumeration route)
// Throws UnknownTarget when the name does not parse.
PSeries expand_target(const std::string& target, const Rat& order);

} // namespace qrank
