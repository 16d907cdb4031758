// Command-line driver for the slip/leak friction Stokes solver.
//
// Subcommands:
//   solve            one run; writes a VTK field dump, multiplier CSV, log CSV
//   convergence      mesh-refinement error study against a reference level
//   thresholds       max trace speed and active-set size across (g, rho) cases
//   multiplier-table side-by-side multiplier columns sampled at x = 0.0 .. 1.0
//
// Exit codes: 0 success, 1 solver failure, 2 usage error.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfstokes.h"

namespace {

struct CaseSpec {
    double g = 1.0;
    double rho = 1.0;
};

struct ColumnSpec {
    sf_bc bc = SF_BC_SLIP;
    double g = 1.0;
    double rho = 1.0;
    double lambda0 = 0.0;
    std::string name;
};

int usage_error(const std::string& msg) {
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return 2;
}

int solver_error(const std::string& what) {
    std::fprintf(stderr, "error: %s: %s\n", what.c_str(), sf_last_error());
    return 1;
}

bool parse_bc(const std::string& s, sf_bc* bc) {
    if (s == "sbcf") *bc = SF_BC_SLIP;
    else if (s == "lbcf") *bc = SF_BC_LEAK;
    else return false;
    return true;
}

bool parse_gauge(const std::string& s, sf_gauge* g) {
    if (s == "auto") *g = SF_GAUGE_AUTO;
    else if (s == "mean-zero") *g = SF_GAUGE_MEAN_ZERO;
    else if (s == "full") *g = SF_GAUGE_FULL;
    else return false;
    return true;
}

// "g:rho" -> CaseSpec
bool parse_case(const std::string& s, CaseSpec* out) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) return false;
    try {
        out->g = std::stod(s.substr(0, colon));
        out->rho = std::stod(s.substr(colon + 1));
    } catch (...) {
        return false;
    }
    return true;
}

// "bc:g:rho:lambda0" -> ColumnSpec (lambda0 optional)
bool parse_column(const std::string& s, ColumnSpec* out) {
    std::vector<std::string> parts;
    std::string::size_type pos = 0;
    while (true) {
        const auto colon = s.find(':', pos);
        if (colon == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, colon - pos));
        pos = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4) return false;
    if (!parse_bc(parts[0], &out->bc)) return false;
    try {
        out->g = std::stod(parts[1]);
        out->rho = std::stod(parts[2]);
        out->lambda0 = parts.size() == 4 ? std::stod(parts[3]) : 0.0;
    } catch (...) {
        return false;
    }
    out->name = parts[0] + "_g" + parts[1] + "_rho" + parts[2];
    if (out->lambda0 != 0.0) out->name += "_l" + parts[3];
    return true;
}

int check_pairing(const std::string& bc, const std::string& gauge) {
    if (bc == "sbcf" && gauge == "full")
        return usage_error("--bc sbcf requires the mean-zero pressure gauge; "
                           "--gauge full conflicts with --bc sbcf");
    if (bc == "lbcf" && gauge == "mean-zero")
        return usage_error("--bc lbcf uses the full pressure space; "
                           "--gauge mean-zero conflicts with --bc lbcf");
    return 0;
}

struct SolveFlags {
    std::string bc = "sbcf";
    std::string gauge = "auto";
    int n = 10;
    double g = 1.0;
    double rho = 1.0;
    double nu = 1.0;
    double lambda_init = 0.0;
    double tol = 1e-5;
    int max_iter = 1000;
};

void add_solve_flags(CLI::App* cmd, SolveFlags* f) {
    cmd->add_option("--bc", f->bc, "boundary condition: sbcf | lbcf")
        ->check(CLI::IsMember({"sbcf", "lbcf"}));
    cmd->add_option("--gauge", f->gauge, "pressure gauge: auto | mean-zero | full")
        ->check(CLI::IsMember({"auto", "mean-zero", "full"}));
    cmd->add_option("--n", f->n, "grid refinement (n x n cells)")->check(CLI::Range(2, 100000));
    cmd->add_option("--g", f->g, "friction threshold")->check(CLI::PositiveNumber);
    cmd->add_option("--rho", f->rho, "multiplier step size")->check(CLI::PositiveNumber);
    cmd->add_option("--nu", f->nu, "viscosity")->check(CLI::PositiveNumber);
    cmd->add_option("--lambda-init", f->lambda_init, "constant initial multiplier");
    cmd->add_option("--tol", f->tol, "stopping tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", f->max_iter, "iteration cap")->check(CLI::Range(1, 1000000));
}

int make_problem_checked(const SolveFlags& f, sf_problem** prob) {
    sf_gauge gauge = SF_GAUGE_AUTO;
    sf_bc bc = SF_BC_SLIP;
    parse_gauge(f.gauge, &gauge);
    parse_bc(f.bc, &bc);
    if (sf_problem_create(f.n, bc, f.nu, gauge, prob) != SF_OK)
        return solver_error("problem setup failed");
    return 0;
}

int run_solve_to(const SolveFlags& f, const sf_problem* prob, sf_solution** sol) {
    sf_options opt;
    sf_options_default(&opt);
    opt.g = f.g;
    opt.rho = f.rho;
    opt.lambda_init = f.lambda_init;
    opt.tol = f.tol;
    opt.max_iter = f.max_iter;
    if (sf_solve(prob, &opt, sol) != SF_OK) return solver_error("solve failed");
    return 0;
}

int cmd_solve(const SolveFlags& f, const std::string& out_prefix) {
    if (int rc = check_pairing(f.bc, f.gauge)) return rc;
    sf_problem* prob = nullptr;
    if (int rc = make_problem_checked(f, &prob)) return rc;
    sf_solution* sol = nullptr;
    if (int rc = run_solve_to(f, prob, &sol)) {
        sf_problem_destroy(prob);
        return rc;
    }
    const std::string vtk = out_prefix + ".vtk";
    const std::string mult = out_prefix + "_multiplier.csv";
    const std::string log = out_prefix + "_log.csv";
    if (sf_solution_write_vtk(sol, vtk.c_str()) != SF_OK ||
        sf_solution_write_multiplier_csv(sol, mult.c_str()) != SF_OK ||
        sf_solution_write_log_csv(sol, log.c_str()) != SF_OK) {
        const int rc = solver_error("output failed");
        sf_solution_destroy(sol);
        sf_problem_destroy(prob);
        return rc;
    }
    std::printf("bc=%s n=%d g=%g rho=%g iterations=%d increment=%.3e "
                "fixed_point=%.3e divergence=%.3e energy=%.3e\n",
                f.bc.c_str(), f.n, f.g, f.rho, sf_solution_iterations(sol),
                sf_solution_final_increment(sol), sf_solution_fixed_point_residual(sol),
                sf_solution_divergence_max(sol), sf_solution_energy_residual(sol));
    std::printf("wrote %s %s %s\n", vtk.c_str(), mult.c_str(), log.c_str());
    sf_solution_destroy(sol);
    sf_problem_destroy(prob);
    return 0;
}

int cmd_convergence(const SolveFlags& f, std::vector<int> levels, int ref,
                    const std::string& out_csv) {
    if (int rc = check_pairing(f.bc, f.gauge)) return rc;
    if (f.gauge != "auto")
        return usage_error("convergence always uses the bc-matched gauge; drop --gauge");
    for (int lv : levels)
        if (ref % lv != 0)
            return usage_error("--ref must be a multiple of every level (got " +
                               std::to_string(ref) + " vs " + std::to_string(lv) + ")");
    sf_bc bc = SF_BC_SLIP;
    parse_bc(f.bc, &bc);
    sf_study* st = nullptr;
    if (sf_study_run(bc, f.g, f.rho, f.lambda_init, f.tol, f.max_iter, f.nu, levels.data(),
                     static_cast<int>(levels.size()), ref, &st) != SF_OK)
        return solver_error("study failed");
    if (sf_study_write_csv(st, out_csv.c_str()) != SF_OK) {
        const int rc = solver_error("output failed");
        sf_study_destroy(st);
        return rc;
    }
    std::printf("%6s %12s %12s %8s %12s %8s %6s\n", "N", "h", "h1_error", "h1_rate",
                "l2_error", "l2_rate", "k_itr");
    for (int i = 0; i < sf_study_rows(st); ++i) {
        sf_study_row r;
        sf_study_row_get(st, i, &r);
        std::printf("%6d %12.5e %12.5e %8.2f %12.5e %8.2f %6d\n", r.n, r.h, r.h1_error,
                    r.h1_rate, r.l2_error, r.l2_rate, r.k_itr);
    }
    double sh = 0.0, sl = 0.0;
    sf_study_slopes(st, &sh, &sl);
    std::printf("ls_slope h1=%.3f l2=%.3f (reference N=%d, k_itr=%d)\n", sh, sl, ref,
                sf_study_ref_iterations(st));
    std::printf("wrote %s\n", out_csv.c_str());
    sf_study_destroy(st);
    return 0;
}

int cmd_thresholds(const SolveFlags& f, const std::vector<std::string>& case_specs,
                   const std::string& out_csv) {
    if (int rc = check_pairing(f.bc, f.gauge)) return rc;
    std::vector<CaseSpec> cases;
    for (const auto& s : case_specs) {
        CaseSpec c;
        if (!parse_case(s, &c)) return usage_error("bad --case '" + s + "', expected g:rho");
        cases.push_back(c);
    }
    if (cases.empty()) {
        if (f.bc == "sbcf")
            cases = {{0.1, 1000.0}, {0.8, 50.0}, {1.25, 10.0}, {2.0, 3.0}};
        else
            cases = {{0.1, 20.0}, {1.2, 30.0}, {2.0, 2.0}, {3.0, 2.0}};
    }
    sf_problem* prob = nullptr;
    if (int rc = make_problem_checked(f, &prob)) return rc;

    std::FILE* out = std::fopen(out_csv.c_str(), "w");
    if (!out) {
        sf_problem_destroy(prob);
        return solver_error("cannot open " + out_csv);
    }
    std::fprintf(out, "g, rho, max_trace, active_nodes, k_itr\n");
    std::printf("%8s %8s %12s %12s %6s\n", "g", "rho", "max_trace", "active_nodes", "k_itr");
    for (const CaseSpec& c : cases) {
        SolveFlags fc = f;
        fc.g = c.g;
        fc.rho = c.rho;
        sf_solution* sol = nullptr;
        if (int rc = run_solve_to(fc, prob, &sol)) {
            std::fclose(out);
            sf_problem_destroy(prob);
            return rc;
        }
        std::fprintf(out, "%.5e, %.5e, %.5e, %d, %d\n", c.g, c.rho,
                     sf_solution_max_trace_speed(sol), sf_solution_active_nodes(sol),
                     sf_solution_iterations(sol));
        std::printf("%8g %8g %12.5e %12d %6d\n", c.g, c.rho,
                    sf_solution_max_trace_speed(sol), sf_solution_active_nodes(sol),
                    sf_solution_iterations(sol));
        sf_solution_destroy(sol);
    }
    std::fclose(out);
    std::printf("wrote %s\n", out_csv.c_str());
    sf_problem_destroy(prob);
    return 0;
}

int cmd_multiplier_table(const SolveFlags& f, const std::vector<std::string>& column_specs,
                         const std::string& out_csv) {
    std::vector<ColumnSpec> cols;
    for (const auto& s : column_specs) {
        ColumnSpec c;
        if (!parse_column(s, &c))
            return usage_error("bad --column '" + s + "', expected bc:g:rho[:lambda0]");
        cols.push_back(c);
    }
    if (cols.empty()) {
        // Built-in demonstration battery: three slip and four leak settings.
        const char* defaults[] = {"sbcf:0.1:1000", "sbcf:0.8:50",  "sbcf:2.0:3",
                                  "lbcf:0.1:20",   "lbcf:1.2:30",  "lbcf:3.0:2",
                                  "lbcf:3.0:2:0.2"};
        for (const char* s : defaults) {
            ColumnSpec c;
            parse_column(s, &c);
            cols.push_back(c);
        }
    }

    std::vector<std::vector<double>> samples(cols.size());
    std::vector<int> iters(cols.size());
    sf_problem* probs[2] = {nullptr, nullptr}; // one per bc kind, built on demand
    for (std::size_t j = 0; j < cols.size(); ++j) {
        const ColumnSpec& c = cols[j];
        sf_problem** slot = &probs[c.bc == SF_BC_SLIP ? 0 : 1];
        if (!*slot) {
            SolveFlags fc = f;
            fc.bc = c.bc == SF_BC_SLIP ? "sbcf" : "lbcf";
            if (int rc = make_problem_checked(fc, slot)) {
                sf_problem_destroy(probs[0]);
                sf_problem_destroy(probs[1]);
                return rc;
            }
        }
        SolveFlags fc = f;
        fc.g = c.g;
        fc.rho = c.rho;
        fc.lambda_init = c.lambda0;
        sf_solution* sol = nullptr;
        if (int rc = run_solve_to(fc, *slot, &sol)) {
            sf_problem_destroy(probs[0]);
            sf_problem_destroy(probs[1]);
            return rc;
        }
        for (int i = 0; i <= 10; ++i)
            samples[j].push_back(sf_solution_multiplier_at(sol, 0.1 * i));
        iters[j] = sf_solution_iterations(sol);
        sf_solution_destroy(sol);
    }
    sf_problem_destroy(probs[0]);
    sf_problem_destroy(probs[1]);

    std::FILE* out = std::fopen(out_csv.c_str(), "w");
    if (!out) return solver_error("cannot open " + out_csv);
    std::fprintf(out, "x");
    for (const ColumnSpec& c : cols) std::fprintf(out, ", %s", c.name.c_str());
    std::fprintf(out, "\n");
    for (int i = 0; i <= 10; ++i) {
        std::fprintf(out, "%.1f", 0.1 * i);
        for (std::size_t j = 0; j < cols.size(); ++j)
            std::fprintf(out, ", %.5e", samples[j][i]);
        std::fprintf(out, "\n");
    }
    std::fprintf(out, "k_itr");
    for (std::size_t j = 0; j < cols.size(); ++j) std::fprintf(out, ", %d", iters[j]);
    std::fprintf(out, "\n");
    std::fclose(out);
    std::printf("wrote %s (%zu columns, n=%d)\n", out_csv.c_str(), cols.size(), f.n);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stokes flow with slip/leak friction boundary conditions"};
    app.require_subcommand(1);

    SolveFlags fs, fc, ft, fm;
    std::string solve_out = "solution";
    std::string conv_out = "study.csv";
    std::string thr_out = "thresholds.csv";
    std::string mult_out = "multiplier_table.csv";
    std::vector<int> levels = {10, 20, 40};
    int ref = 80;
    std::vector<std::string> case_specs, column_specs;

    CLI::App* solve = app.add_subcommand("solve", "single run with field output");
    add_solve_flags(solve, &fs);
    solve->add_option("--out", solve_out, "output path prefix");

    CLI::App* conv = app.add_subcommand("convergence", "mesh-refinement error study");
    add_solve_flags(conv, &fc);
    conv->add_option("--levels", levels, "refinement levels")->delimiter(',');
    conv->add_option("--ref", ref, "reference level (multiple of every level)");
    conv->add_option("--out", conv_out, "output CSV path");

    CLI::App* thr = app.add_subcommand("thresholds", "friction threshold sweep");
    add_solve_flags(thr, &ft);
    thr->add_option("--case", case_specs, "g:rho pair (repeatable)");
    thr->add_option("--out", thr_out, "output CSV path");

    CLI::App* mult = app.add_subcommand("multiplier-table", "sampled multiplier columns");
    add_solve_flags(mult, &fm);
    mult->add_option("--column", column_specs, "bc:g:rho[:lambda0] (repeatable)");
    mult->add_option("--out", mult_out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (solve->parsed()) return cmd_solve(fs, solve_out);
    if (conv->parsed()) return cmd_convergence(fc, levels, ref, conv_out);
    if (thr->parsed()) return cmd_thresholds(ft, case_specs, thr_out);
    if (mult->parsed()) return cmd_multiplier_table(fm, column_specs, mult_out);
    return 2;
}
