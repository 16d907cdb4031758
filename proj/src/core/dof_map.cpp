#include "core/dof_map.hpp"

#include "core/errors.hpp"

namespace sfstokes {

namespace {

DofMap classify(const Mesh& mesh, BcKind bc, bool unconstrained) {
    DofMap dm;
    dm.bc = bc;
    dm.unconstrained = unconstrained;
    dm.n_nodes = mesh.p2_node_count();
    dm.n_pressure = mesh.vertex_count();
    dm.node_class.resize(dm.n_nodes);
    dm.velocity_dof.assign(2 * dm.n_nodes, -1);

    const int top = 2 * mesh.n;
    for (int node = 0; node < dm.n_nodes; ++node) {
        const auto l = mesh.p2_lattice(node);
        const bool on_boundary = l[0] == 0 || l[0] == top || l[1] == 0 || l[1] == top;
        const bool on_gamma1 = l[1] == top && l[0] > 0 && l[0] < top;
        NodeConstraint c = NodeConstraint::Free;
        if (!unconstrained && on_boundary) {
            if (!on_gamma1)
                c = NodeConstraint::PinnedBoth;
            else
                c = bc == BcKind::Sbcf ? NodeConstraint::PinnedNormal
                                       : NodeConstraint::PinnedTangent;
        }
        dm.node_class[node] = c;
        if (on_gamma1) dm.multiplier_nodes.push_back(node);
    }

    int next = 0;
    for (int node = 0; node < dm.n_nodes; ++node) {
        const NodeConstraint c = dm.node_class[node];
        const bool x_free = c == NodeConstraint::Free || c == NodeConstraint::PinnedNormal;
        const bool y_free = c == NodeConstraint::Free || c == NodeConstraint::PinnedTangent;
        if (x_free) dm.velocity_dof[2 * node] = next++;
        if (y_free) dm.velocity_dof[2 * node + 1] = next++;
    }
    dm.n_velocity = next;
    return dm;
}

} // namespace

DofMap build_dof_map(const Mesh& mesh, BcKind bc) {
    return classify(mesh, bc, false);
}

DofMap build_unconstrained_dof_map(const Mesh& mesh) {
    return classify(mesh, BcKind::Sbcf, true);
}

Eigen::VectorXd restrict_to_free(const DofMap& dm, const Eigen::VectorXd& full) {
    if (full.size() != 2 * dm.n_nodes)
        throw InvalidArgumentError("restrict_to_free: expected full vector of size " +
                                   std::to_string(2 * dm.n_nodes));
    Eigen::VectorXd out(dm.n_velocity);
    for (int k = 0; k < 2 * dm.n_nodes; ++k)
        if (dm.velocity_dof[k] >= 0) out[dm.velocity_dof[k]] = full[k];
    return out;
}

Eigen::VectorXd prolong_to_full(const DofMap& dm, const Eigen::VectorXd& free) {
    if (free.size() != dm.n_velocity)
        throw InvalidArgumentError("prolong_to_full: expected free vector of size " +
                                   std::to_string(dm.n_velocity));
    Eigen::VectorXd out = Eigen::VectorXd::Zero(2 * dm.n_nodes);
    for (int k = 0; k < 2 * dm.n_nodes; ++k)
        if (dm.velocity_dof[k] >= 0) out[k] = free[dm.velocity_dof[k]];
    return out;
}

} // namespace sfstokes
