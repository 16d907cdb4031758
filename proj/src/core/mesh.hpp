#pragma once

#include <array>
#include <string>
#include <vector>

namespace sfstokes {

// Uniform triangulation of the unit square: n x n cells, each split into two
// right triangles. The diagonal runs lower-left to upper-right, except in the
// two corner cells where that split would create a triangle with all three
// vertices on the boundary; those use the opposite diagonal.
//
// Vertices sit at (i/n, j/n), id = j*(n+1)+i. P2 nodes sit on the half-step
// lattice (I/(2n), J/(2n)), id = J*(2n+1)+I; even lattice coordinates are
// vertices, everything else is an edge midpoint.
struct Mesh {
    int n = 0;
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> triangles;     // CCW vertex ids
    std::vector<std::array<int, 6>> tri_p2_nodes;  // vertices then midpoints (01),(12),(20)
    int edge_count = 0;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int p2_node_count() const { return (2 * n + 1) * (2 * n + 1); }

    int vertex_id(int i, int j) const { return j * (n + 1) + i; }
    int p2_node_id(int li, int lj) const { return lj * (2 * n + 1) + li; }
    std::array<int, 2> p2_lattice(int node) const {
        return {node % (2 * n + 1), node / (2 * n + 1)};
    }
    std::array<double, 2> p2_coords(int node) const {
        auto l = p2_lattice(node);
        return {l[0] / (2.0 * n), l[1] / (2.0 * n)};
    }
    bool p2_is_vertex(int node) const {
        auto l = p2_lattice(node);
        return l[0] % 2 == 0 && l[1] % 2 == 0;
    }
    // vertex id of a P2 node that lies on the vertex lattice
    int p2_to_vertex(int node) const {
        auto l = p2_lattice(node);
        return vertex_id(l[0] / 2, l[1] / 2);
    }
};

// Affine map from the reference triangle onto triangle t.
struct ElementGeometry {
    double x0, y0;
    double jac[2][2];     // [dx/dxi dx/deta; dy/dxi dy/deta]
    double inv_jt[2][2];  // inverse transpose, maps reference grads to physical
    double det;           // = 2 * area, positive
};
ElementGeometry element_geometry(const Mesh& mesh, int t);

// Throws InvalidArgumentError for n < 2 (a 1x1 grid cannot avoid triangles
// with every vertex on the boundary).
Mesh build_friedrichs_keller(int n);

// Longest edge over all triangles.
double mesh_size(const Mesh& mesh);

// Plain-text dump: header "nv nt", then one "x y" line per vertex and one
// "i j k" line per triangle (zero-based).
void write_mesh_text(const Mesh& mesh, const std::string& path);

// Finds the triangle containing (x, y) and the reference coordinates of the
// point within it. Throws InvalidArgumentError outside the unit square.
struct PointLocation {
    int triangle;
    double xi;
    double eta;
};
PointLocation locate_point(const Mesh& mesh, double x, double y);

// Chain of P2 nodes along the friction boundary y = 1, ordered by x.
// Node r sits at x = r/(2m); even r are vertices, odd r are edge midpoints.
struct Gamma1Trace {
    int m = 0;                 // number of boundary segments
    std::vector<int> p2_nodes; // 2m+1 ids, endpoints included
    std::vector<double> x;     // node x-coordinates
    std::vector<double> seg_len;

    int node_count() const { return 2 * m + 1; }
    int interior_count() const { return 2 * m - 1; }
    bool is_vertex(int r) const { return r % 2 == 0; }
};
Gamma1Trace extract_gamma1_trace(const Mesh& mesh);

} // namespace sfstokes
