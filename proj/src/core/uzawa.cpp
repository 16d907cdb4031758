#include "core/uzawa.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace sfstokes {

double StokesProblem::h1_norm(const Eigen::VectorXd& u_free) const {
    return std::sqrt(std::max(0.0, h1.quad_form(u_free)));
}

StokesProblem make_problem(int n, BcKind bc, double nu,
                           std::optional<PressureGauge> gauge,
                           const VectorField* body_force) {
    if (!(nu > 0.0)) throw InvalidArgumentError("make_problem: nu must be positive");
    StokesProblem prob;
    prob.mesh = build_friedrichs_keller(n);
    prob.dofmap = build_dof_map(prob.mesh, bc);
    prob.trace = extract_gamma1_trace(prob.mesh);
    prob.nu = nu;
    prob.gauge = gauge.value_or(bc == BcKind::Sbcf ? PressureGauge::MeanZero
                                                   : PressureGauge::Full);
    prob.a = assemble_velocity_strain(prob.mesh, prob.dofmap, nu);
    prob.b = assemble_divergence(prob.mesh, prob.dofmap);
    prob.h1 = assemble_velocity_h1(prob.mesh, prob.dofmap);
    prob.pressure_integral = assemble_pressure_integral(prob.mesh);

    if (body_force) {
        prob.load = assemble_load(prob.mesh, prob.dofmap, *body_force);
    } else {
        const ManufacturedCase mc{nu};
        prob.load = assemble_load(prob.mesh, prob.dofmap,
                                  [&mc](double x, double y) { return mc.body_force(x, y); });
    }

    const SaddleSystem sys =
        make_saddle_system(prob.a, prob.b, prob.pressure_integral, prob.gauge);
    prob.fact = std::make_unique<SaddleFactorization>(sys);
    return prob;
}

NonConvergenceError::NonConvergenceError(int max_iter_, double last_increment_,
                                         DiscreteSolution last_)
    : Error("uzawa iteration did not converge within " + std::to_string(max_iter_) +
            " iterations (last H1 increment " + std::to_string(last_increment_) + ")"),
      max_iter(max_iter_),
      last_increment(last_increment_),
      last(std::move(last_)) {}

namespace {

Eigen::VectorXd interior_values(const BoundaryTrace& t) {
    const int n = t.node_count() - 2;
    Eigen::VectorXd v(n);
    for (int j = 0; j < n; ++j) v[j] = t[j + 1];
    return v;
}

BoundaryTrace step2_update(const BoundaryTrace& lambda, double rho,
                           const BoundaryTrace& trace_velocity) {
    BoundaryTrace next = lambda;
    for (int r = 1; r < next.node_count() - 1; ++r)
        next.values[r] += rho * trace_velocity[r];
    return project_tilde(next);
}

int saturated_count(const BoundaryTrace& lambda) {
    int c = 0;
    for (int r = 1; r < lambda.node_count() - 1; ++r)
        if (lambda[r] == 1.0 || lambda[r] == -1.0) ++c;
    return c;
}

BoundaryTrace trace_difference(const BoundaryTrace& a, const BoundaryTrace& b) {
    BoundaryTrace d = a;
    for (int r = 0; r < d.node_count(); ++r) d.values[r] -= b[r];
    return d;
}

} // namespace

DiscreteSolution run_uzawa(const StokesProblem& prob, const FrictionModulus& g,
                           const UzawaParams& params) {
    if (!(params.rho > 0.0)) throw InvalidArgumentError("run_uzawa: rho must be positive");
    if (!(params.tol > 0.0)) throw InvalidArgumentError("run_uzawa: tol must be positive");
    if (params.max_iter < 1) throw InvalidArgumentError("run_uzawa: max_iter must be >= 1");
    g.require_positive(prob.trace);

    const BcKind bc = prob.bc();
    const PressureGauge needed =
        bc == BcKind::Sbcf ? PressureGauge::MeanZero : PressureGauge::Full;
    if (prob.gauge != needed)
        throw InvalidPairingError(
            bc == BcKind::Sbcf
                ? "slip problem requires the mean-zero pressure gauge"
                : "leak problem requires the full pressure space (no gauge row)");

    const SparseOperator coupling = assemble_trace_coupling(prob.dofmap, prob.trace, g);

    BoundaryTrace lambda = project_tilde(
        BoundaryTrace::constant(prob.trace.m, params.lambda_init));

    DiscreteSolution out;
    Eigen::VectorXd u_prev;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (int k = 1; k <= params.max_iter; ++k) {
        const Eigen::VectorXd rhs =
            prob.load - coupling.csr.transpose() * interior_values(lambda);
        const SaddleSolution sol = prob.fact->solve(rhs);

        const BoundaryTrace trace_v =
            extract_boundary_trace(prob.dofmap, prob.trace, sol.u);
        const BoundaryTrace lambda_next = step2_update(lambda, params.rho, trace_v);
        const double fp_residual =
            lambda_norm(prob.trace, g, trace_difference(lambda_next, lambda));

        const double increment = k >= 2 ? prob.h1_norm(sol.u - u_prev) : nan;
        const double energy = energy_identity_residual(prob, g, sol.u);
        out.log.push_back({k, increment, energy, saturated_count(lambda_next)});

        if (k >= 2 && increment <= params.tol && fp_residual <= 10.0 * params.tol) {
            out.u = sol.u;
            out.p = sol.p;
            out.lambda = lambda;
            out.k_itr = k;
            out.final_increment = increment;
            out.fixed_point_residual = fp_residual;
            out.divergence_max = prob.b.apply_max_abs(sol.u);
            return out;
        }

        u_prev = sol.u;
        lambda = lambda_next;
        if (k == params.max_iter) {
            out.u = sol.u;
            out.p = sol.p;
            out.lambda = lambda;
            out.k_itr = k;
            out.final_increment = out.log.back().increment;
            out.fixed_point_residual = fp_residual;
            out.divergence_max = prob.b.apply_max_abs(sol.u);
            throw NonConvergenceError(params.max_iter, out.final_increment, std::move(out));
        }
    }
    throw Error("run_uzawa: unreachable");
}

SaddleSolution solve_at_multiplier(const StokesProblem& prob, const FrictionModulus& g,
                                   const BoundaryTrace& lambda) {
    g.require_positive(prob.trace);
    const SparseOperator coupling = assemble_trace_coupling(prob.dofmap, prob.trace, g);
    const Eigen::VectorXd rhs =
        prob.load - coupling.csr.transpose() * interior_values(lambda);
    return prob.fact->solve(rhs);
}

double energy_identity_residual(const StokesProblem& prob, const FrictionModulus& g,
                                const Eigen::VectorXd& u_free) {
    const BoundaryTrace trace_v = extract_boundary_trace(prob.dofmap, prob.trace, u_free);
    const double work = prob.load.dot(u_free);
    const double lhs = prob.a.quad_form(u_free) + j_h(prob.trace, g, trace_v);
    return std::abs(lhs - work) / std::max(1.0, std::abs(work));
}

ComplementarityReport complementarity_report(const StokesProblem& prob,
                                             const DiscreteSolution& sol,
                                             double slip_threshold) {
    if (!(slip_threshold >= 0.0))
        throw InvalidArgumentError("complementarity_report: threshold must be >= 0");
    const BoundaryTrace trace_v =
        extract_boundary_trace(prob.dofmap, prob.trace, sol.u);
    ComplementarityReport rep;
    for (int r = 1; r < prob.trace.node_count() - 1; ++r) {
        ComplementarityRow row;
        row.x = prob.trace.x[r];
        row.trace = trace_v[r];
        row.lambda = sol.lambda[r];
        row.active = std::abs(row.trace) > slip_threshold;
        if (row.active) {
            ++rep.active_count;
            const double sgn = row.trace > 0 ? 1.0 : -1.0;
            rep.max_active_sign_error =
                std::max(rep.max_active_sign_error, std::abs(row.lambda - sgn));
        } else {
            ++rep.stick_count;
            rep.max_stick_speed = std::max(rep.max_stick_speed, std::abs(row.trace));
        }
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace sfstokes
