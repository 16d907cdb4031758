#pragma once

#include <Eigen/Dense>
#include <functional>

#include "core/dof_map.hpp"
#include "core/mesh.hpp"
#include "core/sparse_operator.hpp"

namespace sfstokes {

using VectorField = std::function<std::array<double, 2>(double, double)>;

// Symmetric-gradient (strain) form 2*nu*sum_ij (e_ij(u), e_ij(v)) on the free
// velocity dofs. Symmetric; positive definite once boundary constraints pin
// rigid motions.
SparseOperator assemble_velocity_strain(const Mesh& mesh, const DofMap& dm, double nu);

// Mixed form b(v, q) = -(div v, q); rows are pressure dofs, columns free
// velocity dofs.
SparseOperator assemble_divergence(const Mesh& mesh, const DofMap& dm);

// Full H1 inner product (mass + gradient) for the velocity, used for
// increment norms between iterates on one mesh.
SparseOperator assemble_velocity_h1(const Mesh& mesh, const DofMap& dm);

// Load vector (f, v) on free velocity dofs.
Eigen::VectorXd assemble_load(const Mesh& mesh, const DofMap& dm, const VectorField& f);

// Integral of each P1 pressure basis function (the mean-value gauge row).
Eigen::VectorXd assemble_pressure_integral(const Mesh& mesh);

// P1 mass matrix on pressure dofs.
SparseOperator assemble_pressure_mass(const Mesh& mesh);

// Single-element strain matrix in local ordering (6 nodes x 2 components,
// dof = 2*a + comp); exposed for direct inspection in tests.
void element_strain_matrix(const Mesh& mesh, int t, double nu, double out[12][12]);

} // namespace sfstokes
