// Command-line surface.  Subcommands are thin wrappers over the library:
// omega, cf, order, stabilizer, fixed-points, equivalent, functor print one
// result each (text by default, --json for machine-readable output); verify
// runs a grid harness and writes a JSON report.  Exit codes: 0 success,
// 1 failed asserted check in verify, 2 parse or domain error (one-line
// diagnostic on the error stream).
#pragma once

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "rmkit/contfrac.hpp"
#include "rmkit/functor.hpp"
#include "rmkit/io.hpp"
#include "rmkit/json_report.hpp"
#include "rmkit/lattices.hpp"
#include "rmkit/modgroup.hpp"
#include "rmkit/verify.hpp"
#include "rmkit/version.hpp"

namespace rmkit::cli {

namespace detail {

inline Int parse_int_arg(const std::string& s, const char* what) {
    rmkit::detail::TextCursor cur(s);
    Int v = cur.read_int(what);
    if (!cur.done())
        throw ParseError(std::string("trailing input after ") + what);
    return v;
}

inline unsigned long parse_count_arg(const std::string& s, const char* what) {
    Int v = parse_int_arg(s, what);
    if (v < 1 || !v.fits_ulong_p())
        throw ParseError(std::string(what) + " must be a positive integer");
    return v.get_ui();
}

inline unsigned resolve_jobs(unsigned long flag_jobs) {
    const char* env = std::getenv("RMKIT_JOBS");
    if (env != nullptr && *env != '\0')
        return static_cast<unsigned>(parse_count_arg(env, "RMKIT_JOBS"));
    return static_cast<unsigned>(flag_jobs);
}

inline void print_json(std::ostream& out, const Json& j) {
    out << j.dump(2) << "\n";
}

inline std::string order_text(const QuadraticOrder& o) {
    return "D=" + o.D.get_str() + ", f=" + o.f.get_str() + ", " +
           (o.sign == Sign::real ? "real" : "imaginary");
}

inline std::string witness_list_text(
    const std::vector<std::pair<Int, Int>>& ws) {
    std::string s;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (i) s += ", ";
        s += "(" + ws[i].first.get_str() + ", " + ws[i].second.get_str() + ")";
    }
    return s;
}

struct VerifyArgs {
    std::string target;
    long D_max = 30;
    long f_max = 3;
    unsigned long k_max = 64;
    std::string bound;
    long N_max = 15;
    std::string grid_list;
    std::string out_path;
    unsigned long jobs = 1;
    bool recheck = false;
    bool json = false;
};

inline int run_verify(const VerifyArgs& va, std::ostream& out,
                      std::ostream& err) {
    unsigned jobs = resolve_jobs(va.jobs);

    if (va.recheck) {
        if (va.out_path.empty())
            throw ParseError("--recheck requires --out with the report to check");
        RecheckOutcome rc = recheck_report_file(va.out_path, jobs);
        if (!rc.match) {
            err << "error: " << (rc.diagnostic.empty() ? "recheck failed"
                                                       : rc.diagnostic)
                << "\n";
            return 1;
        }
        out << "recheck: report re-verified\n";
        return rc.all_asserted_pass ? 0 : 1;
    }

    if (va.target.empty())
        throw ParseError("verify requires a target: lemma1|lemma3|lemma4|theorem1");
    Target target = target_from_name(va.target);

    GridSpec grid;
    grid.D_max = va.D_max;
    grid.f_max = va.f_max;
    grid.k_max = va.k_max;
    if (!va.bound.empty())
        grid.norm_bound = parse_int_arg(va.bound, "norm bound");
    grid.N_max = va.N_max;
    if (!va.grid_list.empty()) grid.points = parse_grid_points(va.grid_list);

    VerificationReport report = run_verification(target, grid, jobs);
    if (!va.out_path.empty()) write_report(report, va.out_path);

    if (va.json) {
        print_json(out, json_of(report));
    } else {
        out << "target: " << target_name(report.target) << "\n";
        out << "points: " << report.points.size() << "\n";
        out << "asserted: " << report.asserted_pass << " pass, "
            << report.asserted_fail << " fail\n";
        out << "recorded: " << report.recorded << "\n";
        out << "discrepancy_flagged: " << report.discrepancy_flagged << "\n";
        out << "duration_ms: " << report.duration_ms << "\n";
        out << (report.all_asserted_pass ? "PASS" : "FAIL") << "\n";
    }
    return report.all_asserted_pass ? 0 : 1;
}

}  // namespace detail

// Runs the CLI on `args` (program name excluded).  All output goes to the
// given streams; the return value is the process exit code.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact arithmetic for quadratic irrationals, periodic "
                 "continued fractions, and congruence-subgroup verification"};
    app.name("rmkit");
    app.set_version_flag("--version", RMKIT_VERSION);
    app.require_subcommand(0, 1);

    std::string omega_D;
    bool omega_imag = false, omega_json = false;
    CLI::App* omega = app.add_subcommand(
        "omega", "standard generator of the quadratic order with radicand D");
    omega->add_option("--D", omega_D, "squarefree radicand > 1")->required();
    omega->add_flag("--imaginary", omega_imag, "imaginary quadratic order");
    omega->add_flag("--json", omega_json, "machine-readable output");

    std::string cf_theta;
    bool cf_json = false;
    CLI::App* cf = app.add_subcommand(
        "cf", "periodic continued fraction of a real quadratic irrational");
    cf->add_option("--theta", cf_theta, "value, e.g. \"(1+sqrt(5))/2\"")
        ->required();
    cf->add_flag("--json", cf_json, "machine-readable output");

    std::string order_theta;
    bool order_json = false;
    CLI::App* order = app.add_subcommand(
        "order", "endomorphism order (D, f) of a quadratic irrational");
    order->add_option("--theta", order_theta, "value, e.g. \"sqrt(5)\"")
        ->required();
    order->add_flag("--json", order_json, "machine-readable output");

    std::string stab_theta;
    bool stab_json = false;
    CLI::App* stab = app.add_subcommand(
        "stabilizer", "fundamental unimodular stabilizer of a real value");
    stab->add_option("--theta", stab_theta, "value, e.g. \"sqrt(2)\"")
        ->required();
    stab->add_flag("--json", stab_json, "machine-readable output");

    std::string fp_matrix;
    bool fp_json = false;
    CLI::App* fp = app.add_subcommand(
        "fixed-points", "fixed points of a hyperbolic unimodular matrix");
    fp->add_option("--matrix", fp_matrix, "row-major entries a,b,c,d")
        ->required();
    fp->add_flag("--json", fp_json, "machine-readable output");

    std::string eq_x, eq_y;
    bool eq_json = false;
    CLI::App* eq = app.add_subcommand(
        "equivalent", "GL2(Z)-equivalence of two real quadratic irrationals");
    eq->add_option("--x", eq_x, "first value")->required();
    eq->add_option("--y", eq_y, "second value")->required();
    eq->add_flag("--json", eq_json, "machine-readable output");

    std::string fun_D, fun_f, fun_bound;
    bool fun_json = false;
    CLI::App* fun = app.add_subcommand(
        "functor", "CM class (D, f) mapped to its real-multiplication order");
    fun->add_option("--D", fun_D, "squarefree radicand > 1")->required();
    fun->add_option("--f", fun_f, "conductor >= 1")->required();
    fun->add_option("--bound", fun_bound, "norm search bound (default 2f+2)");
    fun->add_flag("--json", fun_json, "machine-readable output");

    detail::VerifyArgs va;
    CLI::App* verify = app.add_subcommand(
        "verify", "run a grid harness and write a JSON report");
    verify->add_option("target", va.target,
                       "lemma1|lemma3|lemma4|theorem1");
    verify->add_option("--D-max", va.D_max, "largest radicand (2..100)");
    verify->add_option("--f-max", va.f_max, "largest conductor (1..10)");
    verify->add_option("--k-max", va.k_max, "power search cutoff (1..256)");
    verify->add_option("--bound", va.bound, "norm search bound (0..1000)");
    verify->add_option("--N-max", va.N_max, "largest level (2..30)");
    verify->add_option("--grid", va.grid_list,
                       "explicit points, e.g. \"(2,1),(5,1)\"");
    verify->add_option("--out", va.out_path, "report file path");
    verify->add_option("--jobs", va.jobs, "worker threads (RMKIT_JOBS overrides)");
    verify->add_flag("--recheck", va.recheck,
                     "re-verify the report at --out instead of running");
    verify->add_flag("--json", va.json, "print the full report to stdout");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);

        if (app.get_subcommands().empty()) {
            out << app.help();
            return 0;
        }

        if (*omega) {
            QuadraticIrrational w = order_omega(
                detail::parse_int_arg(omega_D, "D"),
                omega_imag ? Sign::imaginary : Sign::real);
            if (omega_json) detail::print_json(out, json_of(w));
            else out << format_quadratic(w) << "\n";
            return 0;
        }
        if (*cf) {
            ContinuedFraction expansion = cf_expand(parse_quadratic(cf_theta));
            if (cf_json) detail::print_json(out, json_of(expansion));
            else out << format_cf(expansion) << "\n";
            return 0;
        }
        if (*order) {
            QuadraticOrder o = endomorphism_order(parse_quadratic(order_theta));
            if (order_json) detail::print_json(out, json_of(o));
            else out << detail::order_text(o) << "\n";
            return 0;
        }
        if (*stab) {
            Matrix2Z m = stabilizer_matrix(parse_quadratic(stab_theta));
            if (stab_json) detail::print_json(out, json_of(m));
            else out << format_matrix(m) << "\n";
            return 0;
        }
        if (*fp) {
            auto [x, xbar] = fixed_points(parse_matrix(fp_matrix));
            if (fp_json) {
                Json j;
                j["x"] = json_of(x);
                j["xbar"] = json_of(xbar);
                detail::print_json(out, j);
            } else {
                out << format_quadratic(x) << ", " << format_quadratic(xbar)
                    << "\n";
            }
            return 0;
        }
        if (*eq) {
            std::optional<Matrix2Z> witness =
                gl2_equivalent(parse_quadratic(eq_x), parse_quadratic(eq_y));
            if (eq_json) {
                Json j;
                j["equivalent"] = witness.has_value();
                j["witness"] = witness ? json_of(*witness) : Json(nullptr);
                detail::print_json(out, j);
            } else if (witness) {
                out << "equivalent: witness " << format_matrix(*witness) << "\n";
            } else {
                out << "not equivalent\n";
            }
            return 0;
        }
        if (*fun) {
            Int D = detail::parse_int_arg(fun_D, "D");
            Int f = detail::parse_int_arg(fun_f, "f");
            Int bound = fun_bound.empty()
                            ? Int(0)
                            : detail::parse_int_arg(fun_bound, "bound");
            FunctorReport rep = functor_on_class(D, f, bound);
            if (fun_json) {
                detail::print_json(out, json_of(rep));
            } else {
                out << "claimed: " << detail::order_text(rep.claimed) << "\n";
                out << "cm_case: " << (rep.cm_case == CmCase::case1 ? "I" : "II")
                    << "\n";
                if (rep.search.found) {
                    out << "min_norm: " << rep.search.min_norm.get_str() << "\n";
                    out << "witnesses: "
                        << detail::witness_list_text(rep.search.witnesses)
                        << "\n";
                } else {
                    out << "min_norm: none within bound "
                        << rep.bound.get_str() << "\n";
                }
                if (rep.endo) out << "endo: " << format_matrix(*rep.endo) << "\n";
                if (rep.mapped)
                    out << "mapped: " << format_matrix(*rep.mapped) << "\n";
                if (rep.recovered_theta)
                    out << "recovered_theta: "
                        << format_quadratic(*rep.recovered_theta) << "\n";
                if (rep.recovered)
                    out << "recovered: " << detail::order_text(*rep.recovered)
                        << "\n";
                out << "agreement: " << (rep.agreement ? "yes" : "no") << "\n";
                if (rep.case1_even_f) out << "flag: case1_even_f\n";
            }
            return 0;
        }
        if (*verify) return detail::run_verify(va, out, err);

        out << app.help();
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), std::cout, std::cerr);
}

}  // namespace rmkit::cli
