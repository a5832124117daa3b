#include "qrank/identitydb.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qrank/appell.hpp"
#include "qrank/qseries.hpp"

namespace qrank {

using nlohmann::json;

namespace {

long mod_pos(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

Rat parse_rat(const std::string& s, const std::string& ctx) {
    try {
        Rat r(s, 10);
        if (r.get_den() == 0) throw DbError(ctx + ": zero denominator in '" + s + "'");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw DbError(ctx + ": bad rational '" + s + "'");
    }
}

long parse_key_long(const std::string& s, const std::string& ctx) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DbError(ctx + ": bad integer key '" + s + "'");
    }
}

const json& need(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw DbError(ctx + ": missing field '" + key + "'");
    return *it;
}

std::string need_str(const json& j, const char* key, const std::string& ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_string()) throw DbError(ctx + ": field '" + key + "' is not a string");
    return v.get<std::string>();
}

long need_long(const json& j, const char* key, const std::string& ctx) {
    const json& v = need(j, key, ctx);
    if (!v.is_number_integer()) throw DbError(ctx + ": field '" + key + "' is not an integer");
    return v.get<long>();
}

// bounds are stored as strings so the database never carries binary floats
long need_bound(const json& j, const char* key, const std::string& ctx) {
    Rat b = parse_rat(need_str(j, key, ctx), ctx);
    if (b.get_den() != 1 || b < 0) throw DbError(ctx + ": bound '" + key + "' must be a nonnegative integer");
    return static_cast<long>(b.get_num().get_si());
}

PartStat parse_stat(const std::string& s, const std::string& ctx) {
    if (s == "rank-count") return PartStat::RankCount;
    if (s == "crank-count") return PartStat::CrankCount;
    if (s == "rank-parts") return PartStat::RankParts;
    if (s == "crank-ones") return PartStat::CrankOnes;
    throw DbError(ctx + ": unknown statistic '" + s + "'");
}

bool parse_expect(const json& j, const std::string& ctx) {
    if (!j.contains("expect")) return true;
    std::string e = need_str(j, "expect", ctx);
    if (e == "hold") return true;
    if (e == "fail") return false;
    throw DbError(ctx + ": expect must be 'hold' or 'fail'");
}

std::map<long, Rat> parse_rat_map(const json& j, const std::string& ctx) {
    if (!j.is_object()) throw DbError(ctx + ": expected an object of rationals");
    std::map<long, Rat> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string()) throw DbError(ctx + ": map values must be rational strings");
        out[parse_key_long(it.key(), ctx)] = parse_rat(it.value().get<std::string>(), ctx);
    }
    return out;
}

std::vector<EtaGTerm> parse_terms(const json& arr, const std::string& ctx) {
    if (!arr.is_array()) throw DbError(ctx + ": expected an array of product terms");
    std::vector<EtaGTerm> out;
    for (const json& e : arr) {
        EtaGTerm t;
        t.coef = parse_rat(need_str(e, "c", ctx), ctx);
        if (e.contains("q")) t.qpow = need_long(e, "q", ctx);
        if (e.contains("J")) {
            const json& jf = e["J"];
            if (!jf.is_array()) throw DbError(ctx + ": 'J' must be an array of triples");
            for (const json& f : jf) {
                if (!f.is_array() || f.size() != 3) throw DbError(ctx + ": each J factor is [level, offset, power]");
                long m = f[0].get<long>(), a = f[1].get<long>(), pw = f[2].get<long>();
                if (m <= 0 || a < 0 || a >= m || pw == 0)
                    throw DbError(ctx + ": J factor out of range");
                t.jfactors.push_back({m, a, pw});
            }
        }
        if (e.contains("g")) {
            const json& g = e["g"];
            if (!g.is_array() || g.size() != 2) throw DbError(ctx + ": 'g' is [a, b]");
            long a = g[0].get<long>(), b = g[1].get<long>();
            if (a <= 0 || a >= b) throw DbError(ctx + ": g arguments need 0 < a < b");
            t.g = std::array<long, 2>{a, b};
        }
        out.push_back(std::move(t));
    }
    return out;
}

// zero out every term with exponent below lo, keeping the bound
PSeries mask_below(const PSeries& f, const Rat& lo) {
    PSeries g = f.bounded() ? PSeries::zero_to(f.bound()) : PSeries::zero();
    f.for_each([&](const Rat& e, const Coef& c) {
        if (!(e < lo)) g.set(e, c);
    });
    return g;
}

std::string mismatch_witness(const Rat& e, const PSeries& lhs, const PSeries& rhs) {
    return "q^" + rat_str(e) + ": lhs = " + coef_str(lhs.at(e)) +
           ", rhs = " + coef_str(rhs.at(e));
}

std::string tpoly_str(const std::map<long, Rat>& poly) {
    std::string out;
    for (const auto& [e, c] : poly) {
        if (!out.empty()) out += " + ";
        out += "(" + rat_str(c) + ")";
        if (e != 0) out += " t^" + std::to_string(e);
    }
    return out.empty() ? "0" : out;
}

} // namespace

PSeries eta_terms_expand(const std::vector<EtaGTerm>& terms, const Rat& E) {
    // expand with headroom: inversions and g-factors (valuation -a) eat into
    // the truncation bound of a product
    Rat ework = E + Rat(16);
    PSeries total = PSeries::zero_to(E);
    for (const EtaGTerm& t : terms) {
        PSeries part = PSeries::monomial(Rat(t.qpow), Coef(t.coef));
        for (const auto& f : t.jfactors) {
            PSeries base = f[1] == 0 ? euler_prod(f[0], ework) : theta_prod(f[0], f[1], ework);
            long pw = f[2];
            if (pw < 0) {
                base = base.inverted();
                pw = -pw;
            }
            for (long i = 0; i < pw; ++i) part *= base;
        }
        if (t.g) part *= mocktheta_g((*t.g)[0], (*t.g)[1], ework);
        total += part.truncated(E);
    }
    return total;
}

bool IdentityDb::has(const std::string& id) const {
    for (const auto& r : remainders) if (r.id == id) return true;
    for (const auto& r : deviations) if (r.id == id) return true;
    for (const auto& r : weighted_diffs) if (r.id == id) return true;
    for (const auto& r : equalities) if (r.id == id) return true;
    for (const auto& r : scans) if (r.id == id) return true;
    for (const auto& r : equipartitions) if (r.id == id) return true;
    return false;
}

IdentityDb load_identity_db(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DbError("cannot open identity database '" + path + "'");
    json root;
    try {
        in >> root;
    } catch (const std::exception& e) {
        throw DbError("malformed JSON in '" + path + "': " + e.what());
    }
    if (root.value("schema", std::string()) != "qrank-identity-db/1")
        throw DbError("'" + path + "': unrecognized schema");

    IdentityDb db;

    for (const json& e : need(root, "remainders", path)) {
        RemainderRow r;
        r.id = need_str(e, "id", path);
        r.p = need_long(e, "p", r.id);
        r.s = need_long(e, "s", r.id);
        r.k = need_long(e, "k", r.id);
        r.statistic = parse_stat(need_str(e, "statistic", r.id), r.id);
        if (r.statistic != PartStat::RankParts && r.statistic != PartStat::CrankOnes)
            throw DbError(r.id + ": remainder rows take rank-parts or crank-ones");
        r.gexp = need_long(need(e, "rhs_prefactor", r.id), "gexp", r.id);
        if (r.gexp != r.k + s_const(r.p) + 1)
            throw DbError(r.id + ": prefactor exponent disagrees with k + (p^2-1)/24 + 1");
        r.poly = parse_rat_map(need(e, "rhs_poly", r.id), r.id);
        r.check_bound = need_bound(e, "check_bound", r.id);
        db.remainders.push_back(std::move(r));
    }

    for (const json& e : need(root, "deviations", path)) {
        DeviationRow r;
        r.id = need_str(e, "id", path);
        r.statistic = parse_stat(need_str(e, "statistic", r.id), r.id);
        if (r.statistic != PartStat::RankCount && r.statistic != PartStat::CrankCount)
            throw DbError(r.id + ": deviation rows take rank-count or crank-count");
        r.modulus = need_long(e, "modulus", r.id);
        for (const json& v : need(e, "residues", r.id)) r.residues.push_back(v.get<long>());
        if (r.residues.empty()) throw DbError(r.id + ": empty residue list");
        r.start = e.value("start", 0L);
        r.check_bound = need_bound(e, "check_bound", r.id);
        r.terms = parse_terms(need(e, "terms", r.id), r.id);
        db.deviations.push_back(std::move(r));
    }

    for (const json& e : need(root, "named", path)) {
        std::string id = need_str(e, "id", path);
        std::string kind = need_str(e, "kind", id);
        if (kind == "weighted-diff-eta") {
            WeightedDiffRow r;
            r.id = id;
            r.statistic = parse_stat(need_str(e, "statistic", id), id);
            r.p = need_long(e, "p", id);
            r.k = need_long(e, "k", id);
            r.weights = parse_rat_map(need(e, "weights", id), id);
            r.check_bound = need_bound(e, "check_bound", id);
            r.rhs = parse_terms(need(e, "rhs", id), id);
            r.expect_hold = parse_expect(e, id);
            if (e.contains("note")) r.note = need_str(e, "note", id);
            for (const auto& [s, w] : r.weights)
                if (s <= 0 || 2 * s >= r.p) throw DbError(id + ": weights index 0 < s < p/2");
            db.weighted_diffs.push_back(std::move(r));
        } else if (kind == "series-equality") {
            SeriesEqualityRow r;
            r.id = id;
            r.lhs = parse_terms(need(e, "lhs", id), id);
            r.rhs = parse_terms(need(e, "rhs", id), id);
            r.check_bound = need_bound(e, "check_bound", id);
            db.equalities.push_back(std::move(r));
        } else {
            throw DbError(id + ": unknown named kind '" + kind + "'");
        }
    }

    for (const json& e : need(root, "scans", path)) {
        ScanRow r;
        r.id = need_str(e, "id", path);
        r.p = need_long(e, "p", r.id);
        r.k = need_long(e, "k", r.id);
        r.modulus = need_long(e, "modulus", r.id);
        r.max_n = need_long(e, "max_n", r.id);
        if (r.p <= 1 || r.modulus < 0 || r.max_n < 0)
            throw DbError(r.id + ": scan parameters out of range");
        for (const json& c : need(e, "combos", r.id)) {
            ScanCombo combo;
            combo.statistic = parse_stat(need_str(c, "statistic", r.id), r.id);
            combo.weights = parse_rat_map(need(c, "weights", r.id), r.id);
            r.combos.push_back(std::move(combo));
        }
        if (r.combos.empty()) throw DbError(r.id + ": scan with no combos");
        r.expect_hold = parse_expect(e, r.id);
        db.scans.push_back(std::move(r));
    }

    for (const json& e : need(root, "equipartitions", path)) {
        EquipartitionRow r;
        r.id = need_str(e, "id", path);
        r.statistic = parse_stat(need_str(e, "statistic", r.id), r.id);
        if (r.statistic != PartStat::RankCount && r.statistic != PartStat::CrankCount)
            throw DbError(r.id + ": equipartition rows take rank-count or crank-count");
        r.p = need_long(e, "p", r.id);
        r.k = need_long(e, "k", r.id);
        r.max_n = need_long(e, "max_n", r.id);
        db.equipartitions.push_back(std::move(r));
    }

    return db;
}

CheckResult check_remainder(const RemainderRow& row, Route route) {
    CheckResult res;
    res.id = row.id;
    res.kind = "remainder";
    res.bound = "coefficients through q^" + std::to_string(row.check_bound);
    Rat E(row.check_bound + 1);
    Rat ework = E + Rat(8);
    PSeries rem = row.statistic == PartStat::RankParts
                      ? rank_parts_remainder(row.p, row.s, row.k, ework, route)
                      : crank_ones_remainder(row.p, row.s, row.k, ework, route);
    PSeries lhs = (modular_prefactor(row.p, row.k, ework) * rem).truncated(E);
    PSeries rhs = t_poly_expand(row.poly, row.p, E);
    auto mm = first_mismatch(lhs, rhs);
    if (!mm) {
        res.holds = true;
        return res;
    }
    res.witness = mismatch_witness(*mm, lhs, rhs);
    // when the left side is itself a Laurent polynomial in t on the stated
    // exponent range, the refutation can carry the correct right side
    if (!row.poly.empty() && lhs.all_rational()) {
        try {
            auto fit = t_poly_fit(lhs, row.p, row.poly.begin()->first, row.poly.rbegin()->first);
            res.witness += "; lhs fits " + tpoly_str(fit);
        } catch (const FitFailed&) {
        }
    }
    return res;
}

CheckResult check_deviation(const DeviationRow& row, const std::string& oracle) {
    CheckResult res;
    res.id = row.id;
    res.kind = "deviation";
    res.bound = "q^" + std::to_string(row.start) + " through q^" + std::to_string(row.check_bound);
    Rat E(row.check_bound + 1);
    Rat lo(row.start);
    StatTable t = stat_tables(row.modulus, row.check_bound, oracle);
    PSeries rhs = mask_below(eta_terms_expand(row.terms, E), lo);
    for (long r : row.residues) {
        PSeries lhs = mask_below(stat_dev_series(t, row.statistic, r).truncated(E), lo);
        auto mm = first_mismatch(lhs, rhs);
        if (mm) {
            res.witness = "residue " + std::to_string(r) + ", " + mismatch_witness(*mm, lhs, rhs);
            return res;
        }
    }
    res.holds = true;
    return res;
}

CheckResult check_weighted_diff(const WeightedDiffRow& row) {
    CheckResult res;
    res.id = row.id;
    res.kind = "weighted-diff";
    res.expect_hold = row.expect_hold;
    res.bound = "coefficients through q^" + std::to_string(row.check_bound);
    long E = row.check_bound;
    StatTable t = stat_tables(row.p, row.p * E + row.k, "gf-dp");
    PSeries lhs = PSeries::zero_to(Rat(E + 1));
    for (long n = 0; n <= E; ++n) {
        Rat acc(0);
        for (const auto& [s, w] : row.weights) {
            Int diff = t.at(row.statistic, s, row.p * n + row.k) -
                       t.at(row.statistic, row.p - s, row.p * n + row.k);
            acc += w * Rat(diff);
        }
        if (acc != 0) lhs.set(Rat(n), Coef(acc));
    }
    PSeries rhs = eta_terms_expand(row.rhs, Rat(E + 1));
    auto mm = first_mismatch(lhs, rhs);
    if (!mm) {
        res.holds = true;
        return res;
    }
    res.witness = mismatch_witness(*mm, lhs, rhs);
    return res;
}

CheckResult check_series_equality(const SeriesEqualityRow& row) {
    CheckResult res;
    res.id = row.id;
    res.kind = "series-equality";
    res.bound = "coefficients through q^" + std::to_string(row.check_bound);
    Rat E(row.check_bound + 1);
    PSeries lhs = eta_terms_expand(row.lhs, E);
    PSeries rhs = eta_terms_expand(row.rhs, E);
    auto mm = first_mismatch(lhs, rhs);
    if (!mm) {
        res.holds = true;
        return res;
    }
    res.witness = mismatch_witness(*mm, lhs, rhs);
    return res;
}

CheckResult check_scan(const ScanRow& row, long max_n_override, const std::string& oracle) {
    CheckResult res;
    res.id = row.id;
    res.kind = "scan";
    res.expect_hold = row.expect_hold;
    long max_n = max_n_override >= 0 ? max_n_override : row.max_n;
    res.bound = "n = 0 through " + std::to_string(max_n) +
                (row.modulus ? " (zero mod " + std::to_string(row.modulus) + ")" : " (exactly zero)");
    StatTable t = stat_tables(row.p, row.p * max_n + row.k, oracle);
    for (long n = 0; n <= max_n; ++n) {
        Rat acc(0);
        for (const ScanCombo& c : row.combos)
            for (const auto& [r, w] : c.weights)
                acc += w * Rat(t.at(c.statistic, mod_pos(r, row.p), row.p * n + row.k));
        bool ok;
        if (row.modulus == 0) {
            ok = acc == 0;
        } else {
            ok = acc.get_den() == 1 &&
                 mpz_divisible_ui_p(acc.get_num().get_mpz_t(),
                                    static_cast<unsigned long>(row.modulus));
        }
        if (!ok) {
            res.witness = "n = " + std::to_string(n) + " (coefficient of q^" +
                          std::to_string(row.p * n + row.k) + "): value " + rat_str(acc);
            return res;
        }
    }
    res.holds = true;
    return res;
}

CheckResult check_equipartition(const EquipartitionRow& row, long max_n_override,
                                const std::string& oracle) {
    CheckResult res;
    res.id = row.id;
    res.kind = "equipartition";
    long max_n = max_n_override >= 0 ? max_n_override : row.max_n;
    res.bound = "all residues, n = 0 through " + std::to_string(max_n);
    long ntop = row.p * max_n + row.k;
    StatTable t = stat_tables(row.p, ntop, oracle);
    std::vector<Int> pc = partition_counts(ntop);
    for (long n = 0; n <= max_n; ++n) {
        for (long r = 0; r < row.p; ++r) {
            Int scaled = t.at(row.statistic, r, row.p * n + row.k) * row.p;
            if (scaled != pc[row.p * n + row.k]) {
                std::ostringstream w;
                w << "residue " << r << ", n = " << n << ": " << row.p << " * "
                  << t.at(row.statistic, r, row.p * n + row.k) << " != p("
                  << row.p * n + row.k << ") = " << pc[row.p * n + row.k];
                res.witness = w.str();
                return res;
            }
        }
    }
    res.holds = true;
    return res;
}

namespace {

long parse_target_long(const std::string& s, const std::string& target) {
    try {
        size_t used = 0;
        std::string trimmed = s;
        while (!trimmed.empty() && trimmed.front() == ' ') trimmed.erase(trimmed.begin());
        while (!trimmed.empty() && trimmed.back() == ' ') trimmed.pop_back();
        long v = std::stol(trimmed, &used);
        if (used != trimmed.size()) throw std::invalid_argument(trimmed);
        return v;
    } catch (const std::exception&) {
        throw UnknownTarget("cannot parse '" + target + "': bad integer '" + s + "'");
    }
}

long ceil_order(const Rat& order) {
    Rat c = order;
    c.canonicalize();
    Int n = c.get_num(), d = c.get_den();
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    long v = q.get_si();
    return v < 0 ? 0 : v;
}

} // namespace

PSeries expand_target(const std::string& target, const Rat& order) {
    if (auto at = target.find('@'); at != std::string::npos) {
        if (target.substr(0, at) != "t")
            throw UnknownTarget("no series named '" + target + "'");
        long p = parse_target_long(target.substr(at + 1), target);
        if (p != 5 && p != 7) throw UnknownTarget("hauptmodul is available at levels 5 and 7");
        return t_series(p, order);
    }

    auto lp = target.find('(');
    if (lp == std::string::npos || target.back() != ')')
        throw UnknownTarget("no series named '" + target + "'");
    std::string name = target.substr(0, lp);
    std::vector<long> args;
    {
        std::string inner = target.substr(lp + 1, target.size() - lp - 2);
        if (!inner.empty()) {
            std::stringstream ss(inner);
            std::string piece;
            while (std::getline(ss, piece, ','))
                args.push_back(parse_target_long(piece, target));
        }
    }
    if (auto us = name.find('_'); us != std::string::npos) {
        args.insert(args.begin(), parse_target_long(name.substr(us + 1), target));
        name = name.substr(0, us);
    }

    auto want = [&](size_t lo, size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw UnknownTarget("'" + target + "': wrong number of arguments");
    };

    if (name == "D" || name == "Dc") {
        want(2, 3);
        PartStat stat = name == "D" ? PartStat::RankCount : PartStat::CrankCount;
        long m = args[1];
        if (m < 2) throw UnknownTarget("'" + target + "': modulus must be at least 2");
        long r = mod_pos(args[0], m);
        long top = ceil_order(order);
        if (args.size() == 2) {
            StatTable t = stat_tables(m, top, "gf-dp");
            return stat_dev_series(t, stat, r).truncated(order);
        }
        long k = mod_pos(args[2], m);
        StatTable t = stat_tables(m, m * top + k, "gf-dp");
        return dissect(stat_dev_series(t, stat, r), m, k).truncated(order);
    }
    if (name == "L") {
        want(2, 2);
        long p = args[0];
        if (p < 3) throw UnknownTarget("'" + target + "': level must be at least 3");
        return lambert_block(p, mod_pos(args[1], p), order);
    }
    if (name == "F" || name == "Fc") {
        want(2, 2);
        return name == "F" ? rank_parts_kernel(args[0], args[1], order)
                           : crank_parts_kernel(args[0], args[1], order);
    }
    if (name == "N" || name == "M") {
        want(3, 3);
        return name == "N"
                   ? rank_parts_remainder(args[0], args[1], args[2], order, Route::enumeration)
                   : crank_ones_remainder(args[0], args[1], args[2], order, Route::enumeration);
    }
    throw UnknownTarget("no series named '" + target + "'");
}

} // namespace qrank
