#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/mesh.hpp"

namespace sfstokes {

enum class BcKind { Sbcf, Lbcf };

// On the friction boundary y = 1 the outward normal is (0,1), the tangent
// (1,0): the normal velocity component is y, the tangential one x.
enum class NodeConstraint : unsigned char {
    Free,          // interior node, both components free
    PinnedBoth,    // node on the no-slip part of the boundary (corners included)
    PinnedNormal,  // interior friction-boundary node, slip case: y eliminated
    PinnedTangent, // interior friction-boundary node, leak case: x eliminated
};

struct DofMap {
    BcKind bc = BcKind::Sbcf;
    bool unconstrained = false;
    int n_nodes = 0;
    std::vector<NodeConstraint> node_class;
    std::vector<int> velocity_dof; // 2*n_nodes entries, -1 where eliminated
    int n_velocity = 0;
    int n_pressure = 0;
    std::vector<int> multiplier_nodes; // interior trace nodes, ordered by x

    int vdof(int node, int comp) const { return velocity_dof[2 * node + comp]; }
    // friction component: the one the multiplier acts on
    int friction_comp() const { return bc == BcKind::Sbcf ? 0 : 1; }
};

DofMap build_dof_map(const Mesh& mesh, BcKind bc);

// Every velocity dof kept; used by diagnostics and tests that need raw
// operators without boundary elimination.
DofMap build_unconstrained_dof_map(const Mesh& mesh);

// Drops eliminated entries from a full nodal vector (size 2*n_nodes).
Eigen::VectorXd restrict_to_free(const DofMap& dm, const Eigen::VectorXd& full);

// Inverse embedding; eliminated entries become exact zeros.
Eigen::VectorXd prolong_to_full(const DofMap& dm, const Eigen::VectorXd& free);

} // namespace sfstokes
