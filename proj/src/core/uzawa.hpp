#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "core/assembly.hpp"
#include "core/dof_map.hpp"
#include "core/errors.hpp"
#include "core/friction.hpp"
#include "core/manufactured.hpp"
#include "core/mesh.hpp"
#include "core/saddle.hpp"

namespace sfstokes {

// Everything that depends only on (n, bc, nu): mesh, dof numbering, assembled
// operators, load vector, and the factorized saddle system. One bundle serves
// any number of iteration runs (the friction modulus and step size only enter
// the right-hand side and the multiplier update).
struct StokesProblem {
    Mesh mesh;
    DofMap dofmap;
    Gamma1Trace trace;
    double nu = 1.0;
    PressureGauge gauge = PressureGauge::MeanZero;
    SparseOperator a;   // strain form
    SparseOperator b;   // divergence form
    SparseOperator h1;  // full H1 inner product (increment norms)
    Eigen::VectorXd pressure_integral;
    Eigen::VectorXd load;
    std::unique_ptr<SaddleFactorization> fact;

    StokesProblem() = default;
    StokesProblem(StokesProblem&&) = default;
    StokesProblem& operator=(StokesProblem&&) = default;

    double h1_norm(const Eigen::VectorXd& u_free) const;
    BcKind bc() const { return dofmap.bc; }
};

// Builds and factorizes the discrete problem. The gauge defaults to the one
// the boundary condition needs (slip: mean-zero pressure, leak: full space);
// an explicit override is accepted here and validated by run_uzawa.
StokesProblem make_problem(int n, BcKind bc, double nu = 1.0,
                           std::optional<PressureGauge> gauge = std::nullopt,
                           const VectorField* body_force = nullptr);

struct UzawaParams {
    double rho = 1.0;
    double lambda_init = 0.0; // constant initial multiplier, clipped to [-1,1]
    double tol = 1e-5;        // H1 increment threshold
    int max_iter = 1000;
};

struct UzawaLogRow {
    int k;
    double increment;       // NaN for k = 1
    double energy_residual; // relative
    int active_nodes;       // saturated multiplier values after the update
};

struct DiscreteSolution {
    Eigen::VectorXd u; // free velocity dofs
    Eigen::VectorXd p;
    BoundaryTrace lambda;
    int k_itr = 0;
    double final_increment = 0.0;
    double fixed_point_residual = 0.0;
    double divergence_max = 0.0;
    std::vector<UzawaLogRow> log;
};

struct NonConvergenceError : Error {
    NonConvergenceError(int max_iter_, double last_increment_, DiscreteSolution last_);
    int max_iter;
    double last_increment;
    DiscreteSolution last;
};

// Alternating iteration: saddle solve with the multiplier in the right-hand
// side, then projected update lambda <- clip(lambda + rho * trace velocity).
// Stops once the velocity H1 increment is <= tol and the returned multiplier
// is a fixed point of the update within 10*tol in the lumped trace norm.
DiscreteSolution run_uzawa(const StokesProblem& prob, const FrictionModulus& g,
                           const UzawaParams& params);

// Single saddle solve with a frozen multiplier.
SaddleSolution solve_at_multiplier(const StokesProblem& prob, const FrictionModulus& g,
                                   const BoundaryTrace& lambda);

// | a(u,u) + j_h(trace u) - (f,u) | / max(1, |(f,u)|)
double energy_identity_residual(const StokesProblem& prob, const FrictionModulus& g,
                                const Eigen::VectorXd& u_free);

struct ComplementarityRow {
    double x;
    double trace;  // friction component of the velocity at the node
    double lambda;
    bool active;   // |trace| above the classification threshold
};

struct ComplementarityReport {
    std::vector<ComplementarityRow> rows;
    int active_count = 0;
    int stick_count = 0;
    double max_active_sign_error = 0.0; // max |lambda - sgn(trace)| on active nodes
    double max_stick_speed = 0.0;       // max |trace| on stick nodes
};

ComplementarityReport complementarity_report(const StokesProblem& prob,
                                             const DiscreteSolution& sol,
                                             double slip_threshold);

} // namespace sfstokes
