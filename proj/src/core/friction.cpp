#include "core/friction.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace sfstokes {

BoundaryTrace BoundaryTrace::zeros(int m) {
    if (m < 1) throw InvalidArgumentError("BoundaryTrace: m must be >= 1");
    BoundaryTrace t;
    t.values.assign(2 * m + 1, 0.0);
    return t;
}

BoundaryTrace BoundaryTrace::constant(int m, double c) {
    BoundaryTrace t = zeros(m);
    for (int r = 1; r < 2 * m; ++r) t.values[r] = c;
    return t;
}

BoundaryTrace BoundaryTrace::from_values(std::vector<double> v) {
    if (v.size() < 3 || v.size() % 2 == 0)
        throw InvalidArgumentError("BoundaryTrace: need an odd count >= 3 of nodal values");
    if (v.front() != 0.0 || v.back() != 0.0)
        throw InvalidArgumentError("BoundaryTrace: endpoint values must be exactly zero");
    BoundaryTrace t;
    t.values = std::move(v);
    return t;
}

FrictionModulus FrictionModulus::constant(double g) {
    FrictionModulus f;
    f.kind = Kind::Constant;
    f.c0 = g;
    return f;
}

FrictionModulus FrictionModulus::affine(double intercept, double slope) {
    FrictionModulus f;
    f.kind = Kind::Affine;
    f.c0 = intercept;
    f.c1 = slope;
    return f;
}

FrictionModulus FrictionModulus::tabulated(std::vector<double> nodal) {
    FrictionModulus f;
    f.kind = Kind::Tabulated;
    f.values = std::move(nodal);
    return f;
}

double FrictionModulus::at_node(const Gamma1Trace& tr, int r) const {
    switch (kind) {
        case Kind::Constant: return c0;
        case Kind::Affine: return c0 + c1 * tr.x[r];
        case Kind::Tabulated:
            if (values.size() != static_cast<size_t>(tr.node_count()))
                throw InvalidArgumentError("FrictionModulus: tabulated size mismatch");
            return values[r];
    }
    return c0;
}

double FrictionModulus::eval(const Gamma1Trace& tr, double x) const {
    if (kind == Kind::Constant) return c0;
    if (kind == Kind::Affine) return c0 + c1 * x;
    // per-side quadratic through the three nodal values
    const int m = tr.m;
    int side = std::clamp(static_cast<int>(x * m), 0, m - 1);
    const double xa = tr.x[2 * side], xb = tr.x[2 * side + 2];
    const double t = (x - xa) / (xb - xa);
    double sh[3];
    p2_line_values(t, sh);
    return sh[0] * at_node(tr, 2 * side) + sh[1] * at_node(tr, 2 * side + 1) +
           sh[2] * at_node(tr, 2 * side + 2);
}

void FrictionModulus::require_positive(const Gamma1Trace& tr) const {
    for (int r = 1; r < tr.node_count() - 1; ++r)
        if (!(at_node(tr, r) > 0.0))
            throw InvalidArgumentError(
                "FrictionModulus: g must be positive at interior trace nodes (node " +
                std::to_string(r) + ")");
}

std::vector<double> simpson_node_weights(const Gamma1Trace& tr) {
    std::vector<double> w(tr.node_count(), 0.0);
    for (int i = 0; i < tr.m; ++i) {
        const double e = tr.seg_len[i];
        w[2 * i] += e / 6.0;
        w[2 * i + 1] += 4.0 * e / 6.0;
        w[2 * i + 2] += e / 6.0;
    }
    return w;
}

namespace {

void check_trace_sizes(const Gamma1Trace& tr, const BoundaryTrace& a) {
    if (a.node_count() != tr.node_count())
        throw InvalidArgumentError("trace length does not match boundary chain");
}

} // namespace

double lambda_inner(const Gamma1Trace& tr, const FrictionModulus& g,
                    const BoundaryTrace& a, const BoundaryTrace& b) {
    check_trace_sizes(tr, a);
    check_trace_sizes(tr, b);
    g.require_positive(tr);
    double s = 0.0;
    for (int i = 0; i < tr.m; ++i) {
        const double e = tr.seg_len[i];
        const int r0 = 2 * i;
        s += e / 6.0 *
             (g.at_node(tr, r0) * a[r0] * b[r0] +
              4.0 * g.at_node(tr, r0 + 1) * a[r0 + 1] * b[r0 + 1] +
              g.at_node(tr, r0 + 2) * a[r0 + 2] * b[r0 + 2]);
    }
    return s;
}

double lambda_norm(const Gamma1Trace& tr, const FrictionModulus& g,
                   const BoundaryTrace& a) {
    return std::sqrt(std::max(0.0, lambda_inner(tr, g, a, a)));
}

double j_h(const Gamma1Trace& tr, const FrictionModulus& g, const BoundaryTrace& eta) {
    check_trace_sizes(tr, eta);
    g.require_positive(tr);
    double s = 0.0;
    for (int i = 0; i < tr.m; ++i) {
        const double e = tr.seg_len[i];
        const int r0 = 2 * i;
        s += e / 6.0 *
             (g.at_node(tr, r0) * std::abs(eta[r0]) +
              4.0 * g.at_node(tr, r0 + 1) * std::abs(eta[r0 + 1]) +
              g.at_node(tr, r0 + 2) * std::abs(eta[r0 + 2]));
    }
    return s;
}

double j_exact(const Gamma1Trace& tr, const FrictionModulus& g,
               const BoundaryTrace& eta, int quad_points_per_side) {
    check_trace_sizes(tr, eta);
    g.require_positive(tr);
    if (quad_points_per_side < 32)
        throw InvalidArgumentError("j_exact: need at least 32 points per side");

    const int gauss_n = 8;
    const int pieces = (quad_points_per_side + gauss_n - 1) / gauss_n;
    const GaussRule rule = gauss_legendre_01(gauss_n);

    double total = 0.0;
    for (int i = 0; i < tr.m; ++i) {
        const double xa = tr.x[2 * i], xb = tr.x[2 * i + 2];
        const double len = tr.seg_len[i];
        const double v0 = eta[2 * i], vm = eta[2 * i + 1], v1 = eta[2 * i + 2];
        // quadratic q(t) = a t^2 + b t + c through (0,v0), (1/2,vm), (1,v1)
        const double qa = 2 * v0 - 4 * vm + 2 * v1;
        const double qb = -3 * v0 + 4 * vm - v1;
        const double qc = v0;

        // breakpoints: side ends plus real roots inside (0,1)
        double cuts[4] = {0.0, 1.0, 1.0, 1.0};
        int ncuts = 2;
        if (std::abs(qa) > 1e-14) {
            const double disc = qb * qb - 4 * qa * qc;
            if (disc > 0.0) {
                const double sq = std::sqrt(disc);
                // numerically stable pair of roots
                const double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
                double r1 = q / qa;
                double r2 = std::abs(q) > 0 ? qc / q : r1;
                if (r1 > r2) std::swap(r1, r2);
                if (r1 > 0.0 && r1 < 1.0) cuts[ncuts++] = r1;
                if (r2 > 0.0 && r2 < 1.0 && r2 != r1) cuts[ncuts++] = r2;
            }
        } else if (std::abs(qb) > 1e-14) {
            const double r = -qc / qb;
            if (r > 0.0 && r < 1.0) cuts[ncuts++] = r;
        }
        std::sort(cuts, cuts + ncuts);

        for (int c = 0; c + 1 < ncuts; ++c) {
            const double t0 = cuts[c], t1 = cuts[c + 1];
            if (t1 - t0 < 1e-15) continue;
            const double piece_len = (t1 - t0) / pieces;
            for (int pc = 0; pc < pieces; ++pc) {
                const double a0 = t0 + pc * piece_len;
                for (int k = 0; k < gauss_n; ++k) {
                    const double t = a0 + rule.nodes[k] * piece_len;
                    const double q = (qa * t + qb) * t + qc;
                    const double x = xa + t * (xb - xa);
                    total += rule.weights[k] * piece_len * len *
                             g.eval(tr, x) * std::abs(q);
                }
            }
        }
    }
    return total;
}

BoundaryTrace project_tilde(const BoundaryTrace& mu) {
    BoundaryTrace out = mu;
    const int last = out.node_count() - 1;
    for (int r = 1; r < last; ++r)
        out.values[r] = std::clamp(out.values[r], -1.0, 1.0);
    out.values[0] = 0.0;
    out.values[last] = 0.0;
    return out;
}

SparseOperator assemble_trace_coupling(const DofMap& dm, const Gamma1Trace& tr,
                                       const FrictionModulus& g) {
    const auto w = simpson_node_weights(tr);
    const int comp = dm.friction_comp();
    SparseOperator op(tr.interior_count(), dm.n_velocity);
    for (int j = 0; j < tr.interior_count(); ++j) {
        const int r = j + 1;
        const int dof = dm.vdof(tr.p2_nodes[r], comp);
        if (dof < 0)
            throw InvalidArgumentError("assemble_trace_coupling: friction dof eliminated");
        op.add(j, dof, g.at_node(tr, r) * w[r]);
    }
    op.finalize();
    return op;
}

BoundaryTrace extract_boundary_trace(const DofMap& dm, const Gamma1Trace& tr,
                                     const Eigen::VectorXd& u_free) {
    if (u_free.size() != dm.n_velocity)
        throw InvalidArgumentError("extract_boundary_trace: velocity size mismatch");
    const int comp = dm.friction_comp();
    BoundaryTrace out = BoundaryTrace::zeros(tr.m);
    for (int r = 1; r < tr.node_count() - 1; ++r) {
        const int dof = dm.vdof(tr.p2_nodes[r], comp);
        out.values[r] = dof >= 0 ? u_free[dof] : 0.0;
    }
    return out;
}

} // namespace sfstokes
