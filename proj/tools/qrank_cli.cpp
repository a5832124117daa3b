// Command-line front end: load the identity database, run verifications and
// congruence scans, emit JSON-lines reports with a human summary, and dump
// named series expansions.
//
// Exit codes: 0 every selected check passed, 1 at least one refutation
// (a row expected to hold was refuted, or a row recorded as refutable held),
// 2 usage or parse error, 3 resource limit.
//
// The JSON-lines report and the summary table are deterministic; wall-clock
// timing goes to standard error only, so reruns are bit-identical on stdout.

#include <atomic>
#include <chrono>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrank/identitydb.hpp"
#include "qrank/qseries.hpp"

using namespace qrank;
using ojson = nlohmann::ordered_json;

namespace {

constexpr long kEnumLimit = 100;  // largest n the enumeration oracle accepts

struct Job {
    std::string id;
    std::string kind;
    std::string skip_reason;            // nonempty: do not run, report skipped
    std::function<CheckResult()> run;
};

struct Suite {
    std::vector<Job> jobs;

    void add(std::string id, std::string kind, long enum_n_needed,
             const std::string& oracle, std::function<CheckResult()> run) {
        Job j;
        j.id = std::move(id);
        j.kind = std::move(kind);
        if (oracle == "enumeration" && enum_n_needed > kEnumLimit)
            j.skip_reason = "enumeration oracle capped at n = " + std::to_string(kEnumLimit) +
                            ", row needs n = " + std::to_string(enum_n_needed);
        j.run = std::move(run);
        jobs.push_back(std::move(j));
    }
};

// run jobs concurrently, keep results in submission order
int run_suite(const Suite& suite, long njobs) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> results(suite.jobs.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> died{false};
    std::string first_error;
    std::mutex err_mu;

    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < suite.jobs.size();) {
            if (died.load()) return;
            const Job& job = suite.jobs[i];
            if (!job.skip_reason.empty()) continue;
            try {
                results[i] = job.run();
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (first_error.empty()) first_error = job.id + ": " + e.what();
                died.store(true);
                return;
            }
        }
    };

    size_t nthreads = std::min<size_t>(std::max<long>(njobs, 1), suite.jobs.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (died.load()) throw std::runtime_error(first_error);

    bool any_refutation = false, any_skip = false;
    std::map<std::string, std::array<long, 3>> tally;  // kind -> verified, refuted, skipped
    std::vector<std::string> unexpected;

    for (size_t i = 0; i < suite.jobs.size(); ++i) {
        const Job& job = suite.jobs[i];
        ojson line;
        line["id"] = job.id;
        line["kind"] = job.kind;
        if (!job.skip_reason.empty()) {
            line["status"] = "skipped";
            line["reason"] = job.skip_reason;
            tally[job.kind][2]++;
            any_skip = true;
        } else {
            const CheckResult& r = results[i];
            line["status"] = r.holds ? "verified" : "refuted";
            line["expected"] = r.expect_hold ? "hold" : "fail";
            line["bound"] = r.bound;
            if (!r.holds) line["witness"] = r.witness;
            tally[job.kind][r.holds ? 0 : 1]++;
            if (!r.passed()) {
                any_refutation = true;
                unexpected.push_back(job.id + (r.holds ? " holds (recorded as refutable)"
                                                       : " refuted: " + r.witness));
            }
        }
        std::cout << line.dump() << "\n";
    }

    std::cout << "\nkind             verified  refuted  skipped\n";
    for (const auto& [kind, t] : tally) {
        std::cout << kind;
        for (size_t pad = kind.size(); pad < 17; ++pad) std::cout << ' ';
        char buf[40];
        std::snprintf(buf, sizeof buf, "%8ld %8ld %8ld\n", t[0], t[1], t[2]);
        std::cout << buf;
    }
    for (const auto& u : unexpected) std::cout << "unexpected: " << u << "\n";
    std::cout << "result: "
              << (any_refutation ? "refutation" : any_skip ? "incomplete (resource)" : "all checks passed")
              << "\n";

    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall: " << std::chrono::duration<double>(t1 - t0).count() << " s, "
              << suite.jobs.size() << " jobs\n";
    return any_refutation ? 1 : any_skip ? 3 : 0;
}

bool keep(const std::string& row_id, long row_p, const std::string& want_id, long want_p) {
    if (!want_id.empty() && row_id != want_id) return false;
    if (want_p != 0 && row_p != want_p) return false;
    return true;
}

int cmd_verify(const std::string& db_path, long p, const std::string& id, long jobs,
               const std::string& oracle) {
    IdentityDb db = load_identity_db(db_path);
    Suite suite;
    for (const auto& row : db.remainders)
        if (keep(row.id, row.p, id, p))
            suite.add(row.id, "remainder", -1, oracle,
                      [row] { return check_remainder(row, Route::enumeration); });
    for (const auto& row : db.deviations)
        if (keep(row.id, row.modulus, id, p))
            suite.add(row.id, "deviation", row.check_bound, oracle,
                      [row, oracle] { return check_deviation(row, oracle); });
    for (const auto& row : db.weighted_diffs)
        if (keep(row.id, row.p, id, p))
            suite.add(row.id, "weighted-diff", -1, oracle,
                      [row] { return check_weighted_diff(row); });
    // equality rows carry no level, so a --p filter excludes them
    for (const auto& row : db.equalities)
        if (p == 0 && (id.empty() || row.id == id))
            suite.add(row.id, "series-equality", -1, oracle,
                      [row] { return check_series_equality(row); });
    if (suite.jobs.empty()) {
        std::cerr << "error: no catalogued identity matches the given filters\n";
        return 2;
    }
    return run_suite(suite, jobs);
}

int cmd_scan(const std::string& db_path, long p, const std::string& id, long jobs,
             const std::string& oracle, long max_n) {
    IdentityDb db = load_identity_db(db_path);
    Suite suite;
    for (const auto& row : db.scans)
        if (keep(row.id, row.p, id, p)) {
            long top = max_n >= 0 ? max_n : row.max_n;
            suite.add(row.id, "scan", row.p * top + row.k, oracle,
                      [row, max_n, oracle] { return check_scan(row, max_n, oracle); });
        }
    for (const auto& row : db.equipartitions)
        if (keep(row.id, row.p, id, p)) {
            long top = max_n >= 0 ? max_n : row.max_n;
            suite.add(row.id, "equipartition", row.p * top + row.k, oracle,
                      [row, max_n, oracle] { return check_equipartition(row, max_n, oracle); });
        }
    if (suite.jobs.empty()) {
        std::cerr << "error: no catalogued scan matches the given filters\n";
        return 2;
    }
    return run_suite(suite, jobs);
}

int cmd_expand(const std::string& target, long order) {
    std::cout << expand_target(target, Rat(order)).dump();
    return 0;
}

int cmd_selftest() {
    long failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::cout << "selftest: " << name << (ok ? " ok" : " FAILED") << "\n";
        if (!ok) ++failures;
    };

    {
        StatTable a = stat_tables(5, 24, "enumeration");
        StatTable b = stat_tables(5, 24, "gf-dp");
        bool ok = true;
        for (PartStat s : {PartStat::RankCount, PartStat::CrankCount, PartStat::RankParts,
                           PartStat::CrankOnes})
            for (long r = 0; r < 5 && ok; ++r)
                for (long n = 0; n <= 24 && ok; ++n)
                    ok = a.at(s, r, n) == b.at(s, r, n);
        report("statistic oracles agree", ok);
    }
    {
        Rat E(30);
        PSeries pgen = PSeries::zero_to(E);
        auto pc = partition_counts(29);
        for (long n = 0; n < 30; ++n) pgen.set(Rat(n), Coef(Rat(pc[n])));
        PSeries prod = euler_prod(1, E) * pgen;
        bool ok = first_mismatch(prod, PSeries::one().truncated(E)) == std::nullopt;
        report("Euler product inverts the partition series", ok);
    }
    {
        PSeries a = rank_parts_remainder(5, 1, 0, Rat(10), Route::enumeration);
        PSeries b = rank_parts_remainder(5, 1, 0, Rat(10), Route::kernel);
        report("remainder routes agree", first_mismatch(a, b) == std::nullopt);
    }
    {
        PSeries lb = lambert_block(5, 0, Rat(3));
        report("Lambert block head", coef_rat(lb.at(Rat(0))) == rat(-5, 12));
    }
    {
        PSeries t5 = t_series(5, Rat(6));
        bool ok = t5.valuation() && *t5.valuation() == Rat(1) && coef_rat(t5.at(Rat(1))) == Rat(1);
        report("hauptmodul normalization", ok);
    }

    std::cout << (failures ? "selftest: FAILURES\n" : "selftest: all ok\n");
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of rank and crank q-series identities"};
    app.require_subcommand(1);

    std::string db_path = "data/identities.json";
    long p = 0;
    std::string id;
    long jobs = 1;
    std::string oracle = "gf-dp";
    long max_n = -1;
    std::string target;
    long order = 12;

    auto add_db = [&](CLI::App* c) {
        c->add_option("--db", db_path, "identity database path")
            ->envname("QRANK_DB")
            ->capture_default_str();
    };
    auto add_common = [&](CLI::App* c) {
        add_db(c);
        c->add_option("--p", p, "restrict to one level / modulus");
        c->add_option("--id", id, "restrict to one row id");
        c->add_option("--jobs", jobs, "concurrent verification jobs")->check(CLI::Range(1L, 64L));
        c->add_option("--oracle", oracle, "statistic-table oracle where selectable")
            ->check(CLI::IsMember({"enumeration", "gf-dp"}))
            ->capture_default_str();
    };

    CLI::App* v = app.add_subcommand("verify", "check catalogued identities at their stated bounds");
    add_common(v);

    CLI::App* s = app.add_subcommand("scan", "run congruence and equipartition scans");
    add_common(s);
    s->add_option("--max-n", max_n, "override the scanned range");

    CLI::App* e = app.add_subcommand("expand", "print one named series expansion");
    e->add_option("--target", target, "series name, e.g. D(1,5), t@5, L_5(0), N(5,1,0)")
        ->required();
    e->add_option("--order", order, "truncation exponent (exclusive)")->capture_default_str();

    CLI::App* st = app.add_subcommand("selftest", "run built-in engine cross-checks");
    (void)st;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (v->parsed()) return cmd_verify(db_path, p, id, jobs, oracle);
        if (s->parsed()) return cmd_scan(db_path, p, id, jobs, oracle, max_n);
        if (e->parsed()) return cmd_expand(target, order);
        return cmd_selftest();
    } catch (const DbError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const UnknownTarget& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
