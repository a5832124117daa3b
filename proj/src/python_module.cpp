// Python bindings for the main operations: partition statistic tables, named
// series expansions, identity checks against the database, and Laurent
// polynomial fits in the hauptmodul.  Exact values cross the boundary as
// Python ints and as strings of rationals, never as floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qrank/appell.hpp"
#include "qrank/dissection.hpp"
#include "qrank/identitydb.hpp"
#include "qrank/modular.hpp"
#include "qrank/partitions.hpp"

namespace py = pybind11;
using namespace qrank;

namespace {

py::object to_pyint(const Int& x) {
    std::string s = x.get_str();
    PyObject* o = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!o) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(o);
}

PartStat stat_from_name(const std::string& name) {
    if (name == "rank-count") return PartStat::RankCount;
    if (name == "crank-count") return PartStat::CrankCount;
    if (name == "rank-parts") return PartStat::RankParts;
    if (name == "crank-ones") return PartStat::CrankOnes;
    throw py::value_error("unknown statistic '" + name + "'");
}

std::string resolve_db(const std::string& path) {
    if (!path.empty()) return path;
    if (const char* env = std::getenv("QRANK_DB")) return env;
    return "data/identities.json";
}

py::list py_partition_counts(long n_max) {
    py::list out;
    for (const Int& v : partition_counts(n_max)) out.append(to_pyint(v));
    return out;
}

py::dict py_stat_table(long m, long n_max, const std::string& oracle) {
    StatTable t = stat_tables(m, n_max, oracle);
    py::dict out;
    for (const char* name : {"rank-count", "crank-count", "rank-parts", "crank-ones"}) {
        PartStat s = stat_from_name(name);
        py::list rows;
        for (long n = 0; n <= t.n_max; ++n) {
            py::list row;
            for (long r = 0; r < m; ++r) row.append(to_pyint(t.at(s, r, n)));
            rows.append(std::move(row));
        }
        out[name] = std::move(rows);
    }
    return out;
}

py::list py_expand(const std::string& target, long order) {
    PSeries f = expand_target(target, Rat(order));
    py::list out;
    f.for_each([&](const Rat& e, const Coef& c) {
        out.append(py::make_tuple(rat_str(e), coef_str(c)));
    });
    return out;
}

py::dict result_dict(const CheckResult& r) {
    py::dict out;
    out["id"] = r.id;
    out["kind"] = r.kind;
    out["holds"] = r.holds;
    out["expected"] = r.expect_hold ? "hold" : "fail";
    out["passed"] = r.passed();
    out["bound"] = r.bound;
    out["witness"] = r.witness;
    return out;
}

py::dict py_verify(const std::string& id, const std::string& db_path) {
    IdentityDb d = load_identity_db(resolve_db(db_path));
    for (const auto& row : d.remainders)
        if (row.id == id) return result_dict(check_remainder(row));
    for (const auto& row : d.deviations)
        if (row.id == id) return result_dict(check_deviation(row));
    for (const auto& row : d.weighted_diffs)
        if (row.id == id) return result_dict(check_weighted_diff(row));
    for (const auto& row : d.equalities)
        if (row.id == id) return result_dict(check_series_equality(row));
    for (const auto& row : d.scans)
        if (row.id == id) return result_dict(check_scan(row));
    for (const auto& row : d.equipartitions)
        if (row.id == id) return result_dict(check_equipartition(row));
    throw py::value_error("no catalogued row with id '" + id + "'");
}

py::list py_row_ids(const std::string& db_path) {
    IdentityDb d = load_identity_db(resolve_db(db_path));
    py::list out;
    for (const auto& r : d.remainders) out.append(r.id);
    for (const auto& r : d.deviations) out.append(r.id);
    for (const auto& r : d.weighted_diffs) out.append(r.id);
    for (const auto& r : d.equalities) out.append(r.id);
    for (const auto& r : d.scans) out.append(r.id);
    for (const auto& r : d.equipartitions) out.append(r.id);
    return out;
}

py::dict py_remainder_fit(long p, long s, long k, const std::string& statistic, long lo,
                          long hi) {
    PartStat stat = stat_from_name(statistic);
    if (stat != PartStat::RankParts && stat != PartStat::CrankOnes)
        throw py::value_error("remainder fits take rank-parts or crank-ones");
    Rat bound(s_const(p) * p + k + 10);  // past the level's valence bound
    Rat ework = bound + Rat(8);
    PSeries rem = stat == PartStat::RankParts
                      ? rank_parts_remainder(p, s, k, ework, Route::enumeration)
                      : crank_ones_remainder(p, s, k, ework, Route::enumeration);
    PSeries f = (modular_prefactor(p, k, ework) * rem).truncated(bound);
    py::dict out;
    for (const auto& [e, c] : t_poly_fit(f, p, lo, hi)) out[py::int_(e)] = rat_str(c);
    return out;
}

py::list py_cusps(long p) {
    py::list out;
    for (const CuspClass& c : cusp_set(p))
        out.append(py::make_tuple(c.str(), c.width));
    return out;
}

std::string py_ord_geta(long p, long delta, long a, long c) {
    return rat_str(ord_geta(p, delta, a, c));
}

std::string py_ord_dahat(long ell, long j, long k, long c) {
    return rat_str(ord_dahat_cusp(ell, rat(j, k), c));
}

} // namespace

PYBIND11_MODULE(_qrank, m) {
    m.doc() = "exact rank/crank q-series verification core";

    m.def("partition_counts", &py_partition_counts, py::arg("n_max"),
          "list of p(0..n_max) as Python ints");
    m.def("stat_table", &py_stat_table, py::arg("m"), py::arg("n_max"),
          py::arg("oracle") = "gf-dp",
          "dict statistic -> [n][residue] exact counts");
    m.def("expand", &py_expand, py::arg("target"), py::arg("order"),
          "named series expansion as (exponent, coefficient) string pairs");
    m.def("verify", &py_verify, py::arg("id"), py::arg("db") = "",
          "check one catalogued row; db defaults to QRANK_DB");
    m.def("row_ids", &py_row_ids, py::arg("db") = "",
          "ids of every catalogued row");
    m.def("remainder_fit", &py_remainder_fit, py::arg("p"), py::arg("s"), py::arg("k"),
          py::arg("statistic"), py::arg("lo"), py::arg("hi"),
          "Laurent polynomial in t matching the normalized remainder");
    m.def("cusps", &py_cusps, py::arg("p"),
          "cusp class representatives (as 'a/c') with widths");
    m.def("ord_geta", &py_ord_geta, py::arg("p"), py::arg("delta"), py::arg("a"), py::arg("c"),
          "order of the generalized eta factor at the cusp a/c, as a rational string");
    m.def("ord_dahat", &py_ord_dahat, py::arg("ell"), py::arg("j"), py::arg("k"), py::arg("c"),
          "order of the completed-sum derivative at a cusp with denominator c");

    py::register_exception<DbError>(m, "DbError");
    py::register_exception<UnknownTarget>(m, "UnknownTargetError");
}
