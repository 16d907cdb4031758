#include "core/assembly.hpp"

#include "core/quadrature.hpp"

namespace sfstokes {

namespace {

// Physical gradients and mapped quadrature data for one element at one point.
struct PointData {
    double x, y;
    double w; // quadrature weight including |det J|
    double val[6];
    double gx[6], gy[6];
    double p1[3];
};

PointData map_point(const ElementGeometry& g,
                    const TrianglePoint& qp) {
    PointData d;
    d.x = g.x0 + g.jac[0][0] * qp.xi + g.jac[0][1] * qp.eta;
    d.y = g.y0 + g.jac[1][0] * qp.xi + g.jac[1][1] * qp.eta;
    d.w = qp.weight * g.det;
    double ref_grad[6][2];
    p2_values(qp.xi, qp.eta, d.val);
    p2_grads(qp.xi, qp.eta, ref_grad);
    for (int a = 0; a < 6; ++a) {
        d.gx[a] = g.inv_jt[0][0] * ref_grad[a][0] + g.inv_jt[0][1] * ref_grad[a][1];
        d.gy[a] = g.inv_jt[1][0] * ref_grad[a][0] + g.inv_jt[1][1] * ref_grad[a][1];
    }
    p1_values(qp.xi, qp.eta, d.p1);
    return d;
}

} // namespace

void element_strain_matrix(const Mesh& mesh, int t, double nu, double out[12][12]) {
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) out[i][j] = 0.0;
    const ElementGeometry g = element_geometry(mesh, t);
    for (const auto& qp : triangle_rule_deg8()) {
        const PointData d = map_point(g, qp);
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) {
                const double xx = d.gx[a] * d.gx[b] + 0.5 * d.gy[a] * d.gy[b];
                const double yy = d.gy[a] * d.gy[b] + 0.5 * d.gx[a] * d.gx[b];
                const double xy = 0.5 * d.gy[a] * d.gx[b];
                const double yx = 0.5 * d.gx[a] * d.gy[b];
                out[2 * a + 0][2 * b + 0] += d.w * 2.0 * nu * xx;
                out[2 * a + 1][2 * b + 1] += d.w * 2.0 * nu * yy;
                out[2 * a + 0][2 * b + 1] += d.w * 2.0 * nu * xy;
                out[2 * a + 1][2 * b + 0] += d.w * 2.0 * nu * yx;
            }
        }
    }
}

SparseOperator assemble_velocity_strain(const Mesh& mesh, const DofMap& dm, double nu) {
    SparseOperator op(dm.n_velocity, dm.n_velocity);
    double elem[12][12];
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        element_strain_matrix(mesh, t, nu, elem);
        const auto& nodes = mesh.tri_p2_nodes[t];
        for (int a = 0; a < 6; ++a) {
            for (int ca = 0; ca < 2; ++ca) {
                const int ia = dm.vdof(nodes[a], ca);
                if (ia < 0) continue;
                for (int b = 0; b < 6; ++b) {
                    for (int cb = 0; cb < 2; ++cb) {
                        const int ib = dm.vdof(nodes[b], cb);
                        if (ib < 0) continue;
                        op.add(ia, ib, elem[2 * a + ca][2 * b + cb]);
                    }
                }
            }
        }
    }
    op.finalize();
    return op;
}

SparseOperator assemble_divergence(const Mesh& mesh, const DofMap& dm) {
    SparseOperator op(dm.n_pressure, dm.n_velocity);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const auto& nodes = mesh.tri_p2_nodes[t];
        const auto& tri = mesh.triangles[t];
        for (const auto& qp : triangle_rule_deg8()) {
            const PointData d = map_point(g, qp);
            for (int q = 0; q < 3; ++q) {
                for (int a = 0; a < 6; ++a) {
                    const int ix = dm.vdof(nodes[a], 0);
                    const int iy = dm.vdof(nodes[a], 1);
                    if (ix >= 0) op.add(tri[q], ix, -d.w * d.p1[q] * d.gx[a]);
                    if (iy >= 0) op.add(tri[q], iy, -d.w * d.p1[q] * d.gy[a]);
                }
            }
        }
    }
    op.finalize();
    return op;
}

SparseOperator assemble_velocity_h1(const Mesh& mesh, const DofMap& dm) {
    SparseOperator op(dm.n_velocity, dm.n_velocity);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const auto& nodes = mesh.tri_p2_nodes[t];
        for (const auto& qp : triangle_rule_deg8()) {
            const PointData d = map_point(g, qp);
            for (int a = 0; a < 6; ++a) {
                for (int b = 0; b < 6; ++b) {
                    const double v = d.w * (d.val[a] * d.val[b] +
                                            d.gx[a] * d.gx[b] + d.gy[a] * d.gy[b]);
                    for (int c = 0; c < 2; ++c) {
                        const int ia = dm.vdof(nodes[a], c);
                        const int ib = dm.vdof(nodes[b], c);
                        if (ia >= 0 && ib >= 0) op.add(ia, ib, v);
                    }
                }
            }
        }
    }
    op.finalize();
    return op;
}

Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dm, const VectorField& f) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dm.n_velocity);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const auto& nodes = mesh.tri_p2_nodes[t];
        for (const auto& qp : triangle_rule_deg8()) {
            const PointData d = map_point(g, qp);
            const auto fv = f(d.x, d.y);
            for (int a = 0; a < 6; ++a) {
                for (int c = 0; c < 2; ++c) {
                    const int ia = dm.vdof(nodes[a], c);
                    if (ia >= 0) rhs[ia] += d.w * fv[c] * d.val[a];
                }
            }
        }
    }
    return rhs;
}

Eigen::VectorXd assemble_pressure_integral(const Mesh& mesh) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(mesh.vertex_count());
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const auto& tri = mesh.triangles[t];
        // integral of each P1 basis over a triangle is area/3
        for (int q = 0; q < 3; ++q) m[tri[q]] += g.det / 6.0;
    }
    return m;
}

SparseOperator assemble_pressure_mass(const Mesh& mesh) {
    SparseOperator op(mesh.vertex_count(), mesh.vertex_count());
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const ElementGeometry g = element_geometry(mesh, t);
        const auto& tri = mesh.triangles[t];
        // exact P1 mass: area/12 * (2 on diagonal, 1 off)
        const double s = g.det / 24.0;
        for (int q = 0; q < 3; ++q)
            for (int r = 0; r < 3; ++r)
                op.add(tri[q], tri[r], s * (q == r ? 2.0 : 1.0));
    }
    op.finalize();
    return op;
}

} // namespace sfstokes
