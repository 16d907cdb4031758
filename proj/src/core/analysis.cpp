#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace sfstokes {

VelocityField VelocityField::from_free(const StokesProblem& prob,
                                       const Eigen::VectorXd& u_free) {
    VelocityField f;
    f.mesh = &prob.mesh;
    f.full = prolong_to_full(prob.dofmap, u_free);
    return f;
}

std::array<double, 2> eval_velocity(const VelocityField& f, int t, double xi, double eta) {
    double val[6];
    p2_values(xi, eta, val);
    const auto& nodes = f.mesh->tri_p2_nodes[t];
    std::array<double, 2> u{0.0, 0.0};
    for (int a = 0; a < 6; ++a) {
        u[0] += val[a] * f.full[2 * nodes[a]];
        u[1] += val[a] * f.full[2 * nodes[a] + 1];
    }
    return u;
}

std::array<double, 4> eval_velocity_grad(const VelocityField& f, int t, double xi, double eta) {
    double ref[6][2];
    p2_grads(xi, eta, ref);
    const ElementGeometry g = element_geometry(*f.mesh, t);
    const auto& nodes = f.mesh->tri_p2_nodes[t];
    std::array<double, 4> grad{0.0, 0.0, 0.0, 0.0};
    for (int a = 0; a < 6; ++a) {
        const double gx = g.inv_jt[0][0] * ref[a][0] + g.inv_jt[0][1] * ref[a][1];
        const double gy = g.inv_jt[1][0] * ref[a][0] + g.inv_jt[1][1] * ref[a][1];
        grad[0] += gx * f.full[2 * nodes[a]];
        grad[1] += gy * f.full[2 * nodes[a]];
        grad[2] += gx * f.full[2 * nodes[a] + 1];
        grad[3] += gy * f.full[2 * nodes[a] + 1];
    }
    return grad;
}

double eval_pressure(const Mesh& mesh, const Eigen::VectorXd& p, int t, double xi, double eta) {
    double val[3];
    p1_values(xi, eta, val);
    const auto& tri = mesh.triangles[t];
    return val[0] * p[tri[0]] + val[1] * p[tri[1]] + val[2] * p[tri[2]];
}

VelocityField interpolate_velocity(const Mesh& mesh, const ManufacturedCase& mc) {
    VelocityField f;
    f.mesh = &mesh;
    f.full.resize(2 * mesh.p2_node_count());
    for (int node = 0; node < mesh.p2_node_count(); ++node) {
        const auto xy = mesh.p2_coords(node);
        const auto u = mc.velocity(xy[0], xy[1]);
        f.full[2 * node] = u[0];
        f.full[2 * node + 1] = u[1];
    }
    return f;
}

namespace {

void require_nested(const Mesh& coarse, const Mesh& fine) {
    if (fine.n < coarse.n || fine.n % coarse.n != 0)
        throw InvalidArgumentError(
            "error norms need nested meshes: fine n = " + std::to_string(fine.n) +
            " is not an integer multiple of coarse n = " + std::to_string(coarse.n));
}

} // namespace

double h1_velocity_error(const VelocityField& coarse, const VelocityField& fine) {
    require_nested(*coarse.mesh, *fine.mesh);
    double acc = 0.0;
    for (int t = 0; t < fine.mesh->triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(*fine.mesh, t);
        for (const auto& qp : triangle_rule_deg8()) {
            const double x = g.x0 + g.jac[0][0] * qp.xi + g.jac[0][1] * qp.eta;
            const double y = g.y0 + g.jac[1][0] * qp.xi + g.jac[1][1] * qp.eta;
            const auto uf = eval_velocity(fine, t, qp.xi, qp.eta);
            const auto gf = eval_velocity_grad(fine, t, qp.xi, qp.eta);
            const PointLocation loc = locate_point(*coarse.mesh, x, y);
            const auto uc = eval_velocity(coarse, loc.triangle, loc.xi, loc.eta);
            const auto gc = eval_velocity_grad(coarse, loc.triangle, loc.xi, loc.eta);
            double s = 0.0;
            s += (uc[0] - uf[0]) * (uc[0] - uf[0]) + (uc[1] - uf[1]) * (uc[1] - uf[1]);
            for (int i = 0; i < 4; ++i) s += (gc[i] - gf[i]) * (gc[i] - gf[i]);
            acc += qp.weight * g.det * s;
        }
    }
    return std::sqrt(acc);
}

double h1_error_vs_exact(const VelocityField& f, const ManufacturedCase& mc) {
    double acc = 0.0;
    for (int t = 0; t < f.mesh->triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(*f.mesh, t);
        for (const auto& qp : triangle_rule_deg8()) {
            const double x = g.x0 + g.jac[0][0] * qp.xi + g.jac[0][1] * qp.eta;
            const double y = g.y0 + g.jac[1][0] * qp.xi + g.jac[1][1] * qp.eta;
            const auto uh = eval_velocity(f, t, qp.xi, qp.eta);
            const auto gh = eval_velocity_grad(f, t, qp.xi, qp.eta);
            const auto ue = mc.velocity(x, y);
            const auto ge = mc.velocity_grad(x, y);
            double s = (uh[0] - ue[0]) * (uh[0] - ue[0]) +
                       (uh[1] - ue[1]) * (uh[1] - ue[1]);
            for (int i = 0; i < 4; ++i) s += (gh[i] - ge[i]) * (gh[i] - ge[i]);
            acc += qp.weight * g.det * s;
        }
    }
    return std::sqrt(acc);
}

double l2_pressure_error(const Mesh& coarse_mesh, const Eigen::VectorXd& coarse_p,
                         const Mesh& fine_mesh, const Eigen::VectorXd& fine_p,
                         PressureNormalization norm) {
    require_nested(coarse_mesh, fine_mesh);
    if (coarse_p.size() != coarse_mesh.vertex_count() ||
        fine_p.size() != fine_mesh.vertex_count())
        throw InvalidArgumentError("l2_pressure_error: coefficient size mismatch");

    double shift = 0.0;
    if (norm == PressureNormalization::MatchAtOrigin) {
        // vertex 0 is the corner (0,0) on both meshes
        shift = fine_p[0] - coarse_p[0];
    } else if (norm == PressureNormalization::BestConstant) {
        // the domain has unit area, so the optimal constant is the
        // difference of the field integrals
        shift = assemble_pressure_integral(fine_mesh).dot(fine_p) -
                assemble_pressure_integral(coarse_mesh).dot(coarse_p);
    }

    double acc = 0.0;
    for (int t = 0; t < fine_mesh.triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(fine_mesh, t);
        for (const auto& qp : triangle_rule_deg8()) {
            const double x = g.x0 + g.jac[0][0] * qp.xi + g.jac[0][1] * qp.eta;
            const double y = g.y0 + g.jac[1][0] * qp.xi + g.jac[1][1] * qp.eta;
            const double pf = eval_pressure(fine_mesh, fine_p, t, qp.xi, qp.eta);
            const PointLocation loc = locate_point(coarse_mesh, x, y);
            const double pc =
                eval_pressure(coarse_mesh, coarse_p, loc.triangle, loc.xi, loc.eta) + shift;
            acc += qp.weight * g.det * (pc - pf) * (pc - pf);
        }
    }
    return std::sqrt(acc);
}

StudyResult run_convergence_study(const StudyConfig& cfg) {
    if (cfg.levels.empty())
        throw InvalidArgumentError("convergence study: need at least one level");
    for (size_t i = 0; i + 1 < cfg.levels.size(); ++i)
        if (cfg.levels[i] >= cfg.levels[i + 1])
            throw InvalidArgumentError("convergence study: levels must be strictly increasing");
    for (int n : cfg.levels) {
        if (n < 2) throw InvalidArgumentError("convergence study: level below 2");
        if (cfg.ref_level % n != 0 || cfg.ref_level <= n)
            throw InvalidArgumentError(
                "convergence study: reference level " + std::to_string(cfg.ref_level) +
                " is not a proper multiple of level " + std::to_string(n));
    }

    UzawaParams params;
    params.rho = cfg.rho;
    params.lambda_init = cfg.lambda_init;
    params.tol = cfg.tol;
    params.max_iter = cfg.max_iter;
    const FrictionModulus g = FrictionModulus::constant(cfg.g);

    const StokesProblem ref_prob = make_problem(cfg.ref_level, cfg.bc, cfg.nu);
    const DiscreteSolution ref_sol = run_uzawa(ref_prob, g, params);
    const VelocityField ref_field = VelocityField::from_free(ref_prob, ref_sol.u);

    StudyResult result;
    result.ref_level = cfg.ref_level;
    result.ref_k_itr = ref_sol.k_itr;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n : cfg.levels) {
        const StokesProblem prob = make_problem(n, cfg.bc, cfg.nu);
        const DiscreteSolution sol = run_uzawa(prob, g, params);
        const VelocityField field = VelocityField::from_free(prob, sol.u);
        StudyRow row;
        row.n = n;
        row.h = mesh_size(prob.mesh);
        row.h1_err = h1_velocity_error(field, ref_field);
        row.l2_err = l2_pressure_error(prob.mesh, sol.p, ref_prob.mesh, ref_sol.p,
                                       PressureNormalization::BestConstant);
        row.h1_rate = nan;
        row.l2_rate = nan;
        row.k_itr = sol.k_itr;
        if (!result.rows.empty()) {
            const StudyRow& prev = result.rows.back();
            const double dn = std::log(double(n) / prev.n);
            row.h1_rate = std::log(prev.h1_err / row.h1_err) / dn;
            row.l2_rate = std::log(prev.l2_err / row.l2_err) / dn;
        }
        result.rows.push_back(row);
    }
    return result;
}

double ls_slope(const std::vector<StudyRow>& rows, bool pressure) {
    // slope of log(err) against log(1/n)
    const int k = static_cast<int>(rows.size());
    if (k < 2) throw InvalidArgumentError("ls_slope: need at least two rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        const double x = std::log(1.0 / r.n);
        const double y = std::log(pressure ? r.l2_err : r.h1_err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::vector<ThresholdRow> threshold_experiment(const StokesProblem& prob,
                                               const std::vector<std::pair<double, double>>& g_rho,
                                               const UzawaParams& base) {
    std::vector<ThresholdRow> rows;
    for (const auto& [gval, rho] : g_rho) {
        UzawaParams params = base;
        params.rho = rho;
        const DiscreteSolution sol =
            run_uzawa(prob, FrictionModulus::constant(gval), params);
        const BoundaryTrace tv = extract_boundary_trace(prob.dofmap, prob.trace, sol.u);
        double max_trace = 0.0;
        int active = 0;
        for (int r = 1; r < prob.trace.node_count() - 1; ++r) {
            max_trace = std::max(max_trace, std::abs(tv[r]));
            if (sol.lambda[r] == 1.0 || sol.lambda[r] == -1.0) ++active;
        }
        rows.push_back({gval, rho, max_trace, active, sol.k_itr});
    }
    return rows;
}

} // namespace sfstokes
