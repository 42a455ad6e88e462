// Batch verification over (D, f) grids.  Each target runs a harness per grid
// point, splits outcomes into asserted checks (must hold), recorded
// observations (reported without interpretation), and discrepancy flags
// (known disagreements that never fail a run), and aggregates a deterministic
// JSON report: two runs on the same grid are byte-identical apart from the
// duration field.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rmkit/functor.hpp"
#include "rmkit/json_report.hpp"
#include "rmkit/modgroup.hpp"
#include "rmkit/version.hpp"

namespace rmkit {

enum class Target { lemma1, lemma3, lemma4, theorem1 };

inline const char* target_name(Target t) {
    switch (t) {
        case Target::lemma1: return "lemma1";
        case Target::lemma3: return "lemma3";
        case Target::lemma4: return "lemma4";
        case Target::theorem1: return "theorem1";
    }
    return "?";
}

inline Target target_from_name(const std::string& name) {
    if (name == "lemma1") return Target::lemma1;
    if (name == "lemma3") return Target::lemma3;
    if (name == "lemma4") return Target::lemma4;
    if (name == "theorem1") return Target::theorem1;
    throw ParseError("unknown verification target: " + name);
}

// Desk-scale grid description.  An empty `points` list means the full grid of
// squarefree 2 <= D <= D_max crossed with 1 <= f <= f_max; a non-empty list
// names explicit (D, f) points.  Lemma 4 runs over 2 <= N <= N_max instead.
struct GridSpec {
    long D_max = 30;
    long f_max = 3;
    unsigned long k_max = 64;
    Int norm_bound = 0;  // 0 -> per-point default bound
    long N_max = 15;
    std::vector<std::pair<Int, Int>> points;

    bool operator==(const GridSpec&) const = default;

    void validate() const {
        if (D_max < 2 || D_max > 100)
            throw BoundExceededError("grid: D_max must lie in 2..100");
        if (f_max < 1 || f_max > 10)
            throw BoundExceededError("grid: f_max must lie in 1..10");
        if (k_max < 1 || k_max > 256)
            throw BoundExceededError("grid: k_max must lie in 1..256");
        if (norm_bound < 0 || norm_bound > 1000)
            throw BoundExceededError("grid: norm bound must lie in 0..1000");
        if (N_max < 2 || N_max > 30)
            throw BoundExceededError("grid: N_max must lie in 2..30");
        for (const auto& [D, f] : points) {
            if (D < 2 || D > 100)
                throw BoundExceededError("grid: point D must lie in 2..100");
            if (f < 1 || f > 10)
                throw BoundExceededError("grid: point f must lie in 1..10");
            if (!is_squarefree(D))
                throw NonCanonicalRadicandError("grid: point D must be squarefree");
        }
    }
};

inline Json json_of(const GridSpec& g) {
    Json j;
    j["D_max"] = g.D_max;
    j["f_max"] = g.f_max;
    j["k_max"] = g.k_max;
    j["norm_bound"] = json_int(g.norm_bound);
    j["N_max"] = g.N_max;
    Json pts = Json::array();
    for (const auto& p : g.points) pts.push_back(detail::json_int_pair(p));
    j["points"] = std::move(pts);
    return j;
}

inline GridSpec grid_from_json(const Json& j) {
    GridSpec g;
    g.D_max = j.at("D_max").get<long>();
    g.f_max = j.at("f_max").get<long>();
    g.k_max = j.at("k_max").get<unsigned long>();
    const Json& nb = j.at("norm_bound");
    g.norm_bound = nb.is_string() ? Int(nb.get<std::string>(), 10)
                                  : Int(static_cast<long>(nb.get<std::int64_t>()));
    g.N_max = j.at("N_max").get<long>();
    for (const Json& p : j.at("points"))
        g.points.emplace_back(Int(static_cast<long>(p.at(0).get<std::int64_t>())),
                              Int(static_cast<long>(p.at(1).get<std::int64_t>())));
    return g;
}

// Explicit grid lists use the text form "(2,1),(5,1),(3,1)".
inline std::vector<std::pair<Int, Int>> parse_grid_points(std::string_view text) {
    detail::TextCursor cur(text);
    std::vector<std::pair<Int, Int>> pts;
    for (;;) {
        cur.expect('(', "grid point");
        Int D = cur.read_int("grid D");
        cur.expect(',', "grid point");
        Int f = cur.read_int("grid f");
        cur.expect(')', "grid point");
        pts.emplace_back(std::move(D), std::move(f));
        if (!cur.eat(',')) break;
    }
    if (!cur.done()) throw ParseError("parse: trailing input after grid list");
    return pts;
}

struct PointResult {
    Int key1;  // D, or N for the level target
    Int key2;  // f, or 0 for the level target
    bool asserted_ok = true;
    long recorded = 0;
    long flagged = 0;
    Json payload;
};

struct VerificationReport {
    int schema_version = 1;
    std::string tool_version = RMKIT_VERSION;
    Target target = Target::lemma1;
    GridSpec grid;
    std::vector<PointResult> points;
    long asserted_pass = 0;
    long asserted_fail = 0;
    long recorded = 0;
    long discrepancy_flagged = 0;
    long long duration_ms = 0;
    bool all_asserted_pass = true;
};

inline Json json_of(const VerificationReport& r) {
    Json j;
    j["schema_version"] = r.schema_version;
    j["tool_version"] = r.tool_version;
    j["target"] = target_name(r.target);
    j["grid"] = json_of(r.grid);
    Json pts = Json::array();
    for (const PointResult& p : r.points) {
        Json pj;
        pj["key"] = detail::json_int_pair({p.key1, p.key2});
        pj["asserted_ok"] = p.asserted_ok;
        pj["recorded"] = p.recorded;
        pj["flagged"] = p.flagged;
        pj["result"] = p.payload;
        pts.push_back(std::move(pj));
    }
    j["points"] = std::move(pts);
    Json summary;
    summary["asserted_pass"] = r.asserted_pass;
    summary["asserted_fail"] = r.asserted_fail;
    summary["recorded"] = r.recorded;
    summary["discrepancy_flagged"] = r.discrepancy_flagged;
    j["summary"] = std::move(summary);
    j["all_asserted_pass"] = r.all_asserted_pass;
    j["duration_ms"] = r.duration_ms;
    return j;
}

namespace detail {

inline std::vector<std::pair<Int, Int>> grid_points(const GridSpec& g) {
    std::vector<std::pair<Int, Int>> pts = g.points;
    if (pts.empty()) {
        for (long d : squarefree_radicands_upto(g.D_max))
            for (long f = 1; f <= g.f_max; ++f) pts.emplace_back(d, f);
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

inline PointResult lemma1_point(const Int& D, const Int& f, const GridSpec& g) {
    Lemma1Report rep = lemma1_harness(D, f, g.k_max);
    PointResult out;
    out.key1 = D;
    out.key2 = f;
    out.asserted_ok =
        rep.fixed_set_ok && rep.x_in_lattice && rep.xbar_in_lattice;
    out.recorded = 1;  // the minimal-power probe is recorded, never asserted
    out.payload = json_of(rep);
    return out;
}

inline PointResult lemma3_point(const Int& D, const Int& f, const GridSpec& g) {
    FunctorReport rep = functor_on_class(D, f, g.norm_bound);
    PointResult out;
    out.key1 = D;
    out.key2 = f;
    bool claimed_ok = rep.claimed == QuadraticOrder{D, f, Sign::real};
    if (rep.case1_even_f) {
        // Known open discrepancy: the integrality filter admits norms below
        // f^2 D, so the minimizer claim is flagged rather than asserted.
        out.asserted_ok = claimed_ok;
        out.recorded = 1;
        out.flagged = 1;
    } else if (rep.cm_case == CmCase::case1) {
        // Recovery disagreement for D = 1 mod 4 is recorded, not asserted.
        out.asserted_ok = claimed_ok && rep.min_is_f2D && rep.witnesses_expected;
        out.recorded = 1;
        out.flagged = rep.agreement ? 0 : 1;
    } else {
        out.asserted_ok = claimed_ok && rep.min_is_f2D &&
                          rep.witnesses_expected && rep.agreement;
    }
    out.payload = json_of(rep);
    return out;
}

inline PointResult lemma4_point(long N) {
    Lemma4Report rep = verify_lemma4(N);
    PointResult out;
    out.key1 = N;
    out.key2 = 0;
    out.asserted_ok = rep.order_ok && rep.index_ok;
    out.payload = json_of(rep);
    return out;
}

inline PointResult theorem1_point(const Int& D, const Int& f, const GridSpec& g) {
    PointResult l3 = lemma3_point(D, f, g);
    PointResult l1 = lemma1_point(D, f, g);
    PointResult out;
    out.key1 = D;
    out.key2 = f;
    out.asserted_ok = l3.asserted_ok && l1.asserted_ok;
    out.recorded = l3.recorded + l1.recorded;
    out.flagged = l3.flagged + l1.flagged;
    Json j;
    j["lemma3"] = std::move(l3.payload);
    j["lemma1"] = std::move(l1.payload);
    Int N = f * D;
    if (N >= 2 && N <= 30) {
        PointResult l4 = lemma4_point(N.get_si());
        out.asserted_ok = out.asserted_ok && l4.asserted_ok;
        j["lemma4"] = std::move(l4.payload);
        j["lemma4_skipped"] = false;
    } else {
        // Level out of desk-scale enumeration range: skip is recorded.
        j["lemma4"] = nullptr;
        j["lemma4_skipped"] = true;
        out.recorded += 1;
    }
    out.payload = std::move(j);
    return out;
}

template <typename Fn>
std::vector<PointResult> run_indexed(std::size_t n, unsigned jobs, Fn&& fn) {
    std::vector<PointResult> results(n);
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace detail

inline VerificationReport run_verification(Target target, const GridSpec& grid,
                                           unsigned jobs = 1) {
    grid.validate();
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport report;
    report.target = target;
    report.grid = grid;

    if (target == Target::lemma4) {
        std::size_t n = static_cast<std::size_t>(grid.N_max - 1);
        report.points = detail::run_indexed(n, jobs, [&](std::size_t i) {
            return detail::lemma4_point(static_cast<long>(i) + 2);
        });
    } else {
        std::vector<std::pair<Int, Int>> pts = detail::grid_points(grid);
        report.points = detail::run_indexed(pts.size(), jobs, [&](std::size_t i) {
            const auto& [D, f] = pts[i];
            switch (target) {
                case Target::lemma1: return detail::lemma1_point(D, f, grid);
                case Target::lemma3: return detail::lemma3_point(D, f, grid);
                default: return detail::theorem1_point(D, f, grid);
            }
        });
    }

    for (const PointResult& p : report.points) {
        if (p.asserted_ok) ++report.asserted_pass;
        else ++report.asserted_fail;
        report.recorded += p.recorded;
        report.discrepancy_flagged += p.flagged;
    }
    report.all_asserted_pass = report.asserted_fail == 0;
    auto t1 = std::chrono::steady_clock::now();
    report.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return report;
}

inline std::string report_to_string(const VerificationReport& r) {
    return json_of(r).dump(2) + "\n";
}

inline void write_report(const VerificationReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open report path for writing: " + path);
    out << report_to_string(r);
    out.flush();
    if (!out) throw Error("failed writing report: " + path);
}

struct RecheckOutcome {
    bool match = false;             // stored JSON equals the re-run (sans duration)
    bool all_asserted_pass = false; // from the fresh run
    std::string diagnostic;
};

// Re-parses a report and re-verifies every claim in it by re-running the
// harnesses over the recorded grid; equal JSON (duration aside) passes.
inline RecheckOutcome recheck_report(const Json& stored, unsigned jobs = 1) {
    RecheckOutcome out;
    if (!stored.contains("schema_version") ||
        stored.at("schema_version").get<int>() != 1) {
        out.diagnostic = "unsupported schema_version";
        return out;
    }
    Target target = target_from_name(stored.at("target").get<std::string>());
    GridSpec grid = grid_from_json(stored.at("grid"));
    VerificationReport fresh = run_verification(target, grid, jobs);
    out.all_asserted_pass = fresh.all_asserted_pass;
    Json a = stored;
    Json b = json_of(fresh);
    a.erase("duration_ms");
    b.erase("duration_ms");
    // The tool that wrote the report may postdate this one; claims, not
    // provenance, are what get re-verified.
    a.erase("tool_version");
    b.erase("tool_version");
    if (a == b) {
        out.match = true;
    } else {
        out.diagnostic = "recheck mismatch: " + Json::diff(a, b).dump();
    }
    return out;
}

inline RecheckOutcome recheck_report_file(const std::string& path,
                                          unsigned jobs = 1) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open report path for reading: " + path);
    Json stored;
    try {
        in >> stored;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report does not parse as JSON: ") + e.what());
    }
    return recheck_report(stored, jobs);
}

}  // namespace rmkit
