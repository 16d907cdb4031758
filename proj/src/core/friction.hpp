#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/dof_map.hpp"
#include "core/mesh.hpp"
#include "core/sparse_operator.hpp"

namespace sfstokes {

// Nodal values of a piecewise-quadratic function on the friction boundary.
// Endpoint values are structurally zero (the chain endpoints are corners of
// the square, where the velocity is fully pinned).
struct BoundaryTrace {
    std::vector<double> values;

    static BoundaryTrace zeros(int m);
    static BoundaryTrace constant(int m, double c); // interior nodes only
    // validates size 2m+1 >= 3 and exact-zero endpoints
    static BoundaryTrace from_values(std::vector<double> v);

    int node_count() const { return static_cast<int>(values.size()); }
    double& operator[](int r) { return values[r]; }
    double operator[](int r) const { return values[r]; }
};

// Positive stress threshold g on the friction boundary. Evaluated either as
// a constant, an affine function of x, or a per-side quadratic through values
// tabulated at the trace nodes.
struct FrictionModulus {
    enum class Kind { Constant, Affine, Tabulated };
    Kind kind = Kind::Constant;
    double c0 = 1.0, c1 = 0.0;
    std::vector<double> values;

    static FrictionModulus constant(double g);
    static FrictionModulus affine(double intercept, double slope);
    static FrictionModulus tabulated(std::vector<double> nodal);

    double at_node(const Gamma1Trace& tr, int r) const;
    double eval(const Gamma1Trace& tr, double x) const;
    // throws InvalidArgumentError if g <= 0 at an interior trace node
    void require_positive(const Gamma1Trace& tr) const;
};

// Simpson weight of each trace node (no g factor): 4|e_i|/6 at midpoints,
// (|e_{i-1}|+|e_i|)/6 at shared vertices, |e|/6 at the two endpoints.
std::vector<double> simpson_node_weights(const Gamma1Trace& tr);

// Lumped g-weighted inner product: per side |e|/6 * (g a b + 4 g a b + g a b)
// at the side's two vertices and midpoint. Exact for cubic integrands.
double lambda_inner(const Gamma1Trace& tr, const FrictionModulus& g,
                    const BoundaryTrace& a, const BoundaryTrace& b);

double lambda_norm(const Gamma1Trace& tr, const FrictionModulus& g,
                   const BoundaryTrace& a);

// Friction functional with the same lumping: sum of w * g * |eta|.
double j_h(const Gamma1Trace& tr, const FrictionModulus& g, const BoundaryTrace& eta);

// Reference value of integral g*|eta| ds: each side is split at the real
// roots of its quadratic so every piece has one sign, then integrated with
// composite Gauss rules totalling at least quad_points_per_side points
// (precondition: >= 32).
double j_exact(const Gamma1Trace& tr, const FrictionModulus& g,
               const BoundaryTrace& eta, int quad_points_per_side);

// Nodewise clip of interior values onto [-1, 1]; endpoints stay zero.
BoundaryTrace project_tilde(const BoundaryTrace& mu);

// Coupling between the multiplier and the friction velocity component:
// row j (interior trace node M_j) has the single entry g(M_j) * w(M_j) in the
// column of that node's tangential (slip case) or normal (leak case) dof.
SparseOperator assemble_trace_coupling(const DofMap& dm, const Gamma1Trace& tr,
                                       const FrictionModulus& g);

// Nodal values of the friction component of a velocity vector along the
// boundary chain; pinned dofs contribute exact zeros.
BoundaryTrace extract_boundary_trace(const DofMap& dm, const Gamma1Trace& tr,
                                     const Eigen::VectorXd& u_free);

} // namespace sfstokes
