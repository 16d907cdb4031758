#pragma once

#include <string>
#include <vector>

#include "core/manufactured.hpp"
#include "core/uzawa.hpp"

namespace sfstokes {

// A P2 velocity field given by full nodal values (both components, all nodes).
struct VelocityField {
    const Mesh* mesh = nullptr;
    Eigen::VectorXd full; // size 2 * p2_node_count

    static VelocityField from_free(const StokesProblem& prob, const Eigen::VectorXd& u_free);
};

// Pointwise evaluation helpers.
std::array<double, 2> eval_velocity(const VelocityField& f, int t, double xi, double eta);
// row-major [du1/dx, du1/dy; du2/dx, du2/dy]
std::array<double, 4> eval_velocity_grad(const VelocityField& f, int t, double xi, double eta);
double eval_pressure(const Mesh& mesh, const Eigen::VectorXd& p, int t, double xi, double eta);

// Nodal interpolant of the closed-form reference velocity (full nodal vector).
VelocityField interpolate_velocity(const Mesh& mesh, const ManufacturedCase& mc);

// Full H1(Omega)^2 distance between velocity fields on nested meshes; the
// fine mesh must be an integer refinement of the coarse one (the integrand is
// then piecewise polynomial on fine triangles and integrated exactly).
double h1_velocity_error(const VelocityField& coarse, const VelocityField& fine);

// Same integration against the closed-form solution on the field's own mesh.
double h1_error_vs_exact(const VelocityField& f, const ManufacturedCase& mc);

enum class PressureNormalization {
    None,
    MatchAtOrigin, // add a constant so both fields agree at the corner (0,0)
    BestConstant,  // remove the L2-optimal additive constant (the pressure is
                   // only determined up to constants; this is the norm of the
                   // mean-zero part of the difference)
};

double l2_pressure_error(const Mesh& coarse_mesh, const Eigen::VectorXd& coarse_p,
                         const Mesh& fine_mesh, const Eigen::VectorXd& fine_p,
                         PressureNormalization norm);

struct StudyConfig {
    BcKind bc = BcKind::Sbcf;
    double g = 1.0;
    double rho = 1.0;
    std::vector<int> levels;
    int ref_level = 0;
    double nu = 1.0;
    double lambda_init = 0.0;
    double tol = 1e-5;
    int max_iter = 1000;
};

struct StudyRow {
    int n;
    double h;
    double h1_err;
    double h1_rate; // NaN on the first row
    double l2_err;
    double l2_rate; // NaN on the first row
    int k_itr;
};

struct StudyResult {
    std::vector<StudyRow> rows;
    int ref_level = 0;
    int ref_k_itr = 0;
};

// Solves every level plus the reference, then forms errors against the
// reference and consecutive-pair rates. Levels must be strictly increasing
// and every level must divide the reference level (nested refinements).
StudyResult run_convergence_study(const StudyConfig& cfg);

// Least-squares slope of log(err) vs log(1/n).
double ls_slope(const std::vector<StudyRow>& rows, bool pressure);

struct ThresholdRow {
    double g;
    double rho;
    double max_trace; // max |friction velocity component| over interior nodes
    int active_nodes; // saturated multiplier count
    int k_itr;
};

// One converged solve per (g, rho) pair on a shared problem bundle.
std::vector<ThresholdRow> threshold_experiment(const StokesProblem& prob,
                                               const std::vector<std::pair<double, double>>& g_rho,
                                               const UzawaParams& base);

} // namespace sfstokes
