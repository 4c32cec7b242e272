#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gb/bounds.hpp"
#include "gb/certificate_json.hpp"
#include "gb/grid_io.hpp"
#include "gb/norms.hpp"
#include "gb/switching_game.hpp"

namespace gb::cli {

// Exit codes: 0 success, 1 verification/production failure, 2 usage error,
// 3 enumeration or memory budget exceeded.

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string sign_string(const std::vector<int>& signs) {
    std::string s;
    for (int v : signs) s += v == +1 ? '+' : '-';
    return s;
}

inline std::string certificate_text(const BoundCertificate& c) {
    std::ostringstream os;
    os << c.claim.quantity << " " << c.claim.relation << " "
       << fmt(c.claim.bound_decimal);
    if (c.inputs.n) os << "  (n = " << *c.inputs.n << ")";
    if (c.inputs.N) os << "  (range 1.." << *c.inputs.N << ")";
    os << "\n";
    os << "bound: " << c.claim.bound_symbolic << "\n";
    os << "method: " << to_string(c.method) << ", k_n = " << c.evidence.k_n << "\n";
    if (c.evidence.analytic_value)
        os << "analytic value: " << fmt(*c.evidence.analytic_value) << "\n";
    if (c.evidence.exact_value)
        os << "exact value: " << *c.evidence.exact_value << "\n";
    os << "verified: " << (c.verified ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"Gale-Berlekamp switching game solver and bound certifier"};
    app.name("galeb");
    app.require_subcommand(1);
    std::string output_path;
    app.add_option("--output", output_path,
                   "write command output to this file instead of stdout");

    auto* had = app.add_subcommand("hadamard", "construct a Hadamard matrix");
    long long had_order = 0;
    had->add_option("--order", had_order, "exact order to construct")->required();

    auto* solve = app.add_subcommand("solve", "solve a light grid");
    std::string solve_grid, solve_q = "i";
    int solve_jobs = 1;
    solve->add_option("--grid", solve_grid, "grid file (+/- rows)")->required();
    solve->add_option("--quantity", solve_q, "i (min on-lights) or g (max imbalance)")
        ->check(CLI::IsMember({"i", "g"}));
    solve->add_option("--jobs", solve_jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* exact = app.add_subcommand("exact", "exhaustive R_n or G_n");
    int exact_n = 0, exact_jobs = 1;
    std::string exact_q = "R";
    bool exact_heavy = false;
    exact->add_option("--n", exact_n, "grid size")->required();
    exact->add_option("--quantity", exact_q, "R or G")->check(CLI::IsMember({"R", "G"}));
    exact->add_option("--jobs", exact_jobs, "worker threads")->check(CLI::PositiveNumber);
    exact->add_flag("--heavy", exact_heavy, "allow n = 7 (extremely long run)");

    auto* certify = app.add_subcommand("certify", "certified lower bound for R_n");
    long long certify_n = 0;
    int certify_jobs = 1;
    bool certify_json = false;
    certify->add_option("--n", certify_n, "grid size")->required();
    certify->add_option("--jobs", certify_jobs, "worker threads")->check(CLI::PositiveNumber);
    certify->add_flag("--json", certify_json, "emit the certificate as JSON");

    auto* bounds = app.add_subcommand("bounds", "norm and constant bounds");
    bounds->require_subcommand(1);
    auto* b_c22 = bounds->add_subcommand("c22", "sqrt(k_n/n) upper bound");
    long long c22_n = 0;
    b_c22->add_option("--n", c22_n, "size")->required();
    auto* b_cov = bounds->add_subcommand("covering", "verify k_n/n <= 8/5 on a range");
    long long cov_max = 0;
    b_cov->add_option("--max", cov_max, "top of the range")->required();
    auto* b_glob = bounds->add_subcommand("global-g", "verify G_n/n^(3/2) <= 75*sqrt(17)/289");
    long long glob_max = 0;
    bool glob_json = false;
    b_glob->add_option("--max", glob_max, "top of the range")->required();
    b_glob->add_flag("--json", glob_json, "emit the certificate as JSON");
    auto* b_ksz = bounds->add_subcommand("ksz", "(k_n/n)^((m-1)/2) mixed-norm bound");
    long long ksz_m = 0, ksz_n = 0;
    b_ksz->add_option("--m", ksz_m, "tensor order")->required();
    b_ksz->add_option("--n", ksz_n, "dimension")->required();

    auto* tables = app.add_subcommand("tables", "recompute and print the reference tables");
    bool tables_csv_flag = false;
    int tables_jobs = 1;
    tables->add_flag("--csv", tables_csv_flag, "CSV output");
    tables->add_option("--jobs", tables_jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* render = app.add_subcommand("render", "render a grid with block glyphs");
    std::string render_grid_file, render_q;
    render->add_option("--grid", render_grid_file, "grid file")->required();
    render->add_option("--quantity", render_q, "also solve i or g and caption it")
        ->check(CLI::IsMember({"i", "g"}));

    std::vector<const char*> argv;
    argv.push_back("galeb");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    std::ostringstream body;
    try {
        if (had->parsed()) {
            const SignMatrix h = construct_hadamard(had_order);
            if (!verify_hadamard(h)) {
                err << "hadamard: construction failed verification\n";
                return 1;
            }
            body << to_grid_text(h);
        } else if (solve->parsed()) {
            const LightGrid grid(load_grid_file(solve_grid));
            const GameSolution sol = solve_q == "i" ? solve_i(grid, solve_jobs)
                                                    : solve_g(grid, solve_jobs);
            body << solve_q << " = " << sol.value << "\n";
            body << "rows " << detail::sign_string(sol.witness.row_signs) << "\n";
            body << "cols " << detail::sign_string(sol.witness.col_signs) << "\n";
        } else if (exact->parsed()) {
            if (exact_q == "R") {
                const ExactHardestGrid res = exact_R(exact_n, exact_jobs, exact_heavy);
                body << "R_" << exact_n << " = " << res.value << "\n";
                body << to_grid_text(res.worst_grid.matrix());
            } else {
                body << "G_" << exact_n << " = "
                     << exact_G(exact_n, exact_jobs, exact_heavy) << "\n";
            }
        } else if (certify->parsed()) {
            const BoundCertificate cert = r_lower_certificate(certify_n, certify_jobs);
            if (certify_json)
                body << to_json(cert).dump(2) << "\n";
            else
                body << detail::certificate_text(cert);
            if (!cert.verified) {
                err << body.str();
                err << "certify: verification failed\n";
                return 1;
            }
        } else if (b_c22->parsed()) {
            const C22Bound b = c22_upper(c22_n);
            body << "n = " << b.n << "\n";
            body << "k_n = " << b.k_n << "\n";
            body << "bound = sqrt(" << b.k_n << "/" << b.n
                 << ") = " << detail::fmt(b.value) << "\n";
        } else if (b_cov->parsed()) {
            const CoveringReport rep = verify_sqrt85(cov_max);
            body << "range [1, " << rep.range_checked << "] verified\n";
            body << "table rows: " << rep.table_count << "\n";
            body << "covering cells: " << rep.cells.size() << "\n";
            body << "max ratio^2 = " << rep.max_ratio_sq_num << "/"
                 << rep.max_ratio_sq_den << " = " << detail::fmt(rep.max_ratio_sq)
                 << " at n = " << rep.argmax_n << "\n";
        } else if (b_glob->parsed()) {
            const BoundCertificate cert = global_g_bound(glob_max);
            if (glob_json)
                body << to_json(cert).dump(2) << "\n";
            else
                body << detail::certificate_text(cert);
        } else if (b_ksz->parsed()) {
            const double v = ksz_upper(ksz_m, ksz_n);
            const long long k = known_order_at_least(ksz_n);
            body << "ksz_upper(" << ksz_m << ", " << ksz_n << ") = (" << k << "/"
                 << ksz_n << ")^(" << ksz_m - 1 << "/2) = " << detail::fmt(v) << "\n";
        } else if (tables->parsed()) {
            const ReferenceTables t = reproduce_tables(tables_jobs);
            body << (tables_csv_flag ? tables_csv(t) : tables_text(t));
        } else if (render->parsed()) {
            const SignMatrix m = load_grid_file(render_grid_file);
            if (render_q.empty()) {
                body << gb::render_grid(m);
            } else {
                const LightGrid grid(m);
                const GameSolution sol =
                    render_q == "i" ? solve_i(grid) : solve_g(grid);
                body << gb::render_grid(m, sol.value, render_q);
            }
        }
    } catch (const SizeLimitError& e) {
        err << "size limit: " << e.what() << "\n";
        return 3;
    } catch (const ShapeError& e) {
        err << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedParameterError& e) {
        err << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        // coverage gaps, counterexamples, regressions, numeric failures
        err << "failed: " << e.what() << "\n";
        return 1;
    }

    if (!output_path.empty()) {
        std::ofstream f(output_path);
        if (!f) {
            err << "cannot write " << output_path << "\n";
            return 2;
        }
        f << body.str();
    } else {
        out << body.str();
    }
    return 0;
}

}  // namespace gb::cli
