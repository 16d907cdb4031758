#include "sfstokes.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/errors.hpp"
#include "core/report_io.hpp"
#include "core/uzawa.hpp"

using namespace sfstokes;

namespace {

thread_local std::string t_last_error = "ok";

sf_status fail(sf_status code, const std::string& msg) {
    t_last_error = msg;
    return code;
}

template <typename Fn>
sf_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidArgumentError& e) {
        return fail(SF_ERR_INVALID_ARGUMENT, e.what());
    } catch (const SingularSystemError& e) {
        return fail(SF_ERR_SINGULAR_SYSTEM, e.what());
    } catch (const NonConvergenceError& e) {
        return fail(SF_ERR_NO_CONVERGENCE, e.what());
    } catch (const IoError& e) {
        return fail(SF_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SF_ERR_INTERNAL, e.what());
    }
}

BcKind to_bc(sf_bc bc) { return bc == SF_BC_SLIP ? BcKind::Sbcf : BcKind::Lbcf; }

} // namespace

struct sf_problem {
    std::shared_ptr<StokesProblem> impl;
};

struct sf_solution {
    std::shared_ptr<StokesProblem> prob; // keeps mesh/operators alive
    DiscreteSolution sol;
    VelocityField vel;
    double energy_residual = 0.0;
    double max_trace = 0.0;
    int active_nodes = 0;
};

struct sf_study {
    StudyResult result;
};

extern "C" {

const char* sf_last_error(void) { return t_last_error.c_str(); }

sf_status sf_problem_create(int n, sf_bc bc, double nu, sf_gauge gauge, sf_problem** out) {
    if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "out pointer is null");
    *out = nullptr;
    if (bc != SF_BC_SLIP && bc != SF_BC_LEAK)
        return fail(SF_ERR_INVALID_ARGUMENT, "unknown boundary condition kind");
    return guarded([&]() {
        std::optional<PressureGauge> g;
        if (gauge == SF_GAUGE_MEAN_ZERO) g = PressureGauge::MeanZero;
        else if (gauge == SF_GAUGE_FULL) g = PressureGauge::Full;
        else if (gauge != SF_GAUGE_AUTO)
            throw InvalidArgumentError("unknown pressure gauge");
        auto p = std::make_unique<sf_problem>();
        p->impl = std::make_shared<StokesProblem>(make_problem(n, to_bc(bc), nu, g));
        *out = p.release();
        return SF_OK;
    });
}

void sf_problem_destroy(sf_problem* p) { delete p; }

int sf_problem_grid(const sf_problem* p) { return p ? p->impl->mesh.n : 0; }

int sf_problem_velocity_dofs(const sf_problem* p) {
    return p ? p->impl->dofmap.n_velocity : 0;
}

int sf_problem_pressure_dofs(const sf_problem* p) {
    return p ? p->impl->dofmap.n_pressure : 0;
}

int sf_problem_multiplier_dofs(const sf_problem* p) {
    return p ? static_cast<int>(p->impl->dofmap.multiplier_nodes.size()) : 0;
}

double sf_problem_mesh_size(const sf_problem* p) {
    return p ? mesh_size(p->impl->mesh) : 0.0;
}

sf_status sf_problem_write_mesh(const sf_problem* p, const char* path) {
    if (!p || !path) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        write_mesh_text(p->impl->mesh, path);
        return SF_OK;
    });
}

void sf_options_default(sf_options* opt) {
    if (!opt) return;
    opt->g = 1.0;
    opt->rho = 1.0;
    opt->lambda_init = 0.0;
    opt->tol = 1e-5;
    opt->max_iter = 1000;
}

sf_status sf_solve(const sf_problem* p, const sf_options* opt, sf_solution** out) {
    if (!p || !opt || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        UzawaParams params;
        params.rho = opt->rho;
        params.lambda_init = opt->lambda_init;
        params.tol = opt->tol;
        params.max_iter = opt->max_iter;
        const FrictionModulus g = FrictionModulus::constant(opt->g);
        auto s = std::make_unique<sf_solution>();
        s->prob = p->impl;
        s->sol = run_uzawa(*p->impl, g, params);
        s->vel = VelocityField::from_free(*p->impl, s->sol.u);
        s->energy_residual = energy_identity_residual(*p->impl, g, s->sol.u);
        const BoundaryTrace tv = extract_boundary_trace(p->impl->dofmap, p->impl->trace, s->sol.u);
        for (int r = 1; r + 1 < tv.node_count(); ++r)
            s->max_trace = std::max(s->max_trace, std::abs(tv[r]));
        for (int r = 1; r + 1 < s->sol.lambda.node_count(); ++r)
            if (s->sol.lambda[r] == 1.0 || s->sol.lambda[r] == -1.0) ++s->active_nodes;
        *out = s.release();
        return SF_OK;
    });
}

void sf_solution_destroy(sf_solution* s) { delete s; }

int sf_solution_iterations(const sf_solution* s) { return s ? s->sol.k_itr : 0; }

double sf_solution_final_increment(const sf_solution* s) {
    return s ? s->sol.final_increment : 0.0;
}

double sf_solution_fixed_point_residual(const sf_solution* s) {
    return s ? s->sol.fixed_point_residual : 0.0;
}

double sf_solution_divergence_max(const sf_solution* s) {
    return s ? s->sol.divergence_max : 0.0;
}

double sf_solution_energy_residual(const sf_solution* s) {
    return s ? s->energy_residual : 0.0;
}

double sf_solution_max_trace_speed(const sf_solution* s) { return s ? s->max_trace : 0.0; }

int sf_solution_active_nodes(const sf_solution* s) { return s ? s->active_nodes : 0; }

int sf_solution_multiplier_count(const sf_solution* s) {
    return s ? s->sol.lambda.node_count() : 0;
}

sf_status sf_solution_multiplier(const sf_solution* s, double* x, double* lambda, int count) {
    if (!s || !x || !lambda) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    if (count != s->sol.lambda.node_count())
        return fail(SF_ERR_INVALID_ARGUMENT, "multiplier buffer size mismatch");
    for (int r = 0; r < count; ++r) {
        x[r] = s->prob->trace.x[r];
        lambda[r] = s->sol.lambda[r];
    }
    return SF_OK;
}

double sf_solution_multiplier_at(const sf_solution* s, double x) {
    if (!s) return 0.0;
    const Gamma1Trace& tr = s->prob->trace;
    int best = 0;
    double best_dist = std::abs(tr.x[0] - x);
    for (int r = 2; r < s->sol.lambda.node_count(); r += 2) { // vertices only
        const double d = std::abs(tr.x[r] - x);
        if (d < best_dist) {
            best = r;
            best_dist = d;
        }
    }
    return s->sol.lambda[best];
}

sf_status sf_solution_velocity_at(const sf_solution* s, double x, double y, double* u1,
                                  double* u2) {
    if (!s || !u1 || !u2) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        const PointLocation loc = locate_point(s->prob->mesh, x, y);
        const auto v = eval_velocity(s->vel, loc.triangle, loc.xi, loc.eta);
        *u1 = v[0];
        *u2 = v[1];
        return SF_OK;
    });
}

sf_status sf_solution_pressure_at(const sf_solution* s, double x, double y, double* value) {
    if (!s || !value) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        const PointLocation loc = locate_point(s->prob->mesh, x, y);
        *value = eval_pressure(s->prob->mesh, s->sol.p, loc.triangle, loc.xi, loc.eta);
        return SF_OK;
    });
}

sf_status sf_solution_write_vtk(const sf_solution* s, const char* path) {
    if (!s || !path) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        write_solution_vtk(s->prob->mesh, s->prob->dofmap, s->sol.u, s->sol.p, path);
        return SF_OK;
    });
}

sf_status sf_solution_write_multiplier_csv(const sf_solution* s, const char* path) {
    if (!s || !path) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        write_multiplier_csv(s->prob->trace, s->sol.lambda, path);
        return SF_OK;
    });
}

sf_status sf_solution_write_log_csv(const sf_solution* s, const char* path) {
    if (!s || !path) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        write_iteration_log_csv(s->sol.log, path);
        return SF_OK;
    });
}

sf_status sf_h1_velocity_error(const sf_solution* coarse, const sf_solution* fine,
                               double* out) {
    if (!coarse || !fine || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        *out = h1_velocity_error(coarse->vel, fine->vel);
        return SF_OK;
    });
}

sf_status sf_l2_pressure_error(const sf_solution* coarse, const sf_solution* fine,
                               int match_at_origin, double* out) {
    if (!coarse || !fine || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        *out = l2_pressure_error(coarse->prob->mesh, coarse->sol.p, fine->prob->mesh,
                                 fine->sol.p,
                                 match_at_origin ? PressureNormalization::MatchAtOrigin
                                                 : PressureNormalization::None);
        return SF_OK;
    });
}

sf_status sf_study_run(sf_bc bc, double g, double rho, double lambda_init, double tol,
                       int max_iter, double nu, const int* levels, int n_levels,
                       int ref_level, sf_study** out) {
    if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "out pointer is null");
    *out = nullptr;
    if (!levels || n_levels <= 0)
        return fail(SF_ERR_INVALID_ARGUMENT, "level list must be non-empty");
    return guarded([&]() {
        StudyConfig cfg;
        cfg.bc = to_bc(bc);
        cfg.g = g;
        cfg.rho = rho;
        cfg.lambda_init = lambda_init;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.nu = nu;
        cfg.levels.assign(levels, levels + n_levels);
        cfg.ref_level = ref_level;
        auto st = std::make_unique<sf_study>();
        st->result = run_convergence_study(cfg);
        *out = st.release();
        return SF_OK;
    });
}

void sf_study_destroy(sf_study* st) { delete st; }

int sf_study_rows(const sf_study* st) {
    return st ? static_cast<int>(st->result.rows.size()) : 0;
}

sf_status sf_study_row_get(const sf_study* st, int i, sf_study_row* out) {
    if (!st || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    if (i < 0 || i >= static_cast<int>(st->result.rows.size()))
        return fail(SF_ERR_INVALID_ARGUMENT, "row index out of range");
    const StudyRow& r = st->result.rows[i];
    out->n = r.n;
    out->h = r.h;
    out->h1_error = r.h1_err;
    out->h1_rate = r.h1_rate;
    out->l2_error = r.l2_err;
    out->l2_rate = r.l2_rate;
    out->k_itr = r.k_itr;
    return SF_OK;
}

int sf_study_ref_iterations(const sf_study* st) { return st ? st->result.ref_k_itr : 0; }

sf_status sf_study_slopes(const sf_study* st, double* h1_slope, double* l2_slope) {
    if (!st || !h1_slope || !l2_slope) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        *h1_slope = ls_slope(st->result.rows, false);
        *l2_slope = ls_slope(st->result.rows, true);
        return SF_OK;
    });
}

sf_status sf_study_write_csv(const sf_study* st, const char* path) {
    if (!st || !path) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        write_study_csv(st->result, path);
        return SF_OK;
    });
}

} // extern "C"
