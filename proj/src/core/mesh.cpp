#include "core/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "core/errors.hpp"

namespace sfstokes {

namespace {

std::array<int, 6> p2_nodes_of(const Mesh& mesh, const std::array<int, 3>& tri) {
    const int np1 = mesh.n + 1;
    std::array<int, 2> lat[3];
    for (int a = 0; a < 3; ++a) {
        int i = tri[a] % np1, j = tri[a] / np1;
        lat[a] = {2 * i, 2 * j};
    }
    auto id = [&](int li, int lj) { return mesh.p2_node_id(li, lj); };
    return {
        id(lat[0][0], lat[0][1]),
        id(lat[1][0], lat[1][1]),
        id(lat[2][0], lat[2][1]),
        id((lat[0][0] + lat[1][0]) / 2, (lat[0][1] + lat[1][1]) / 2),
        id((lat[1][0] + lat[2][0]) / 2, (lat[1][1] + lat[2][1]) / 2),
        id((lat[2][0] + lat[0][0]) / 2, (lat[2][1] + lat[0][1]) / 2),
    };
}

} // namespace

Mesh build_friedrichs_keller(int n) {
    if (n < 2)
        throw InvalidArgumentError(
            "build_friedrichs_keller: n must be >= 2, got " + std::to_string(n));

    Mesh mesh;
    mesh.n = n;
    mesh.vertices.reserve((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            mesh.vertices.push_back({static_cast<double>(i) / n,
                                     static_cast<double>(j) / n});

    mesh.triangles.reserve(2 * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = mesh.vertex_id(i, j);
            const int v10 = mesh.vertex_id(i + 1, j);
            const int v01 = mesh.vertex_id(i, j + 1);
            const int v11 = mesh.vertex_id(i + 1, j + 1);
            // The main-diagonal split would give the bottom-right and
            // top-left corner cells a triangle with all vertices on the
            // boundary; flip those two cells.
            const bool flip = (i == n - 1 && j == 0) || (i == 0 && j == n - 1);
            if (!flip) {
                mesh.triangles.push_back({v00, v10, v11});
                mesh.triangles.push_back({v00, v11, v01});
            } else {
                mesh.triangles.push_back({v00, v10, v01});
                mesh.triangles.push_back({v10, v11, v01});
            }
        }
    }

    mesh.tri_p2_nodes.reserve(mesh.triangles.size());
    std::set<std::pair<int, int>> edges;
    for (const auto& tri : mesh.triangles) {
        mesh.tri_p2_nodes.push_back(p2_nodes_of(mesh, tri));
        for (int a = 0; a < 3; ++a) {
            int u = tri[a], v = tri[(a + 1) % 3];
            edges.emplace(std::min(u, v), std::max(u, v));
        }
    }
    mesh.edge_count = static_cast<int>(edges.size());
    return mesh;
}

ElementGeometry element_geometry(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[t];
    const auto& p0 = mesh.vertices[tri[0]];
    const auto& p1 = mesh.vertices[tri[1]];
    const auto& p2 = mesh.vertices[tri[2]];
    ElementGeometry g;
    g.x0 = p0[0];
    g.y0 = p0[1];
    g.jac[0][0] = p1[0] - p0[0];
    g.jac[0][1] = p2[0] - p0[0];
    g.jac[1][0] = p1[1] - p0[1];
    g.jac[1][1] = p2[1] - p0[1];
    g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
    // inv(J)^T = adj(J)^T / det
    g.inv_jt[0][0] = g.jac[1][1] / g.det;
    g.inv_jt[0][1] = -g.jac[1][0] / g.det;
    g.inv_jt[1][0] = -g.jac[0][1] / g.det;
    g.inv_jt[1][1] = g.jac[0][0] / g.det;
    return g;
}

double mesh_size(const Mesh& mesh) {
    double h = 0.0;
    for (const auto& tri : mesh.triangles) {
        for (int a = 0; a < 3; ++a) {
            const auto& p = mesh.vertices[tri[a]];
            const auto& q = mesh.vertices[tri[(a + 1) % 3]];
            h = std::max(h, std::hypot(q[0] - p[0], q[1] - p[1]));
        }
    }
    return h;
}

void write_mesh_text(const Mesh& mesh, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw IoError("write_mesh_text: cannot open " + path);
    std::fprintf(f, "%d %d\n", mesh.vertex_count(), mesh.triangle_count());
    for (const auto& v : mesh.vertices)
        std::fprintf(f, "%.17g %.17g\n", v[0], v[1]);
    for (const auto& t : mesh.triangles)
        std::fprintf(f, "%d %d %d\n", t[0], t[1], t[2]);
    std::fclose(f);
}

PointLocation locate_point(const Mesh& mesh, double x, double y) {
    const double eps = 1e-12;
    if (x < -eps || x > 1.0 + eps || y < -eps || y > 1.0 + eps)
        throw InvalidArgumentError("locate_point: point outside unit square");
    const int n = mesh.n;
    const int ci = std::clamp(static_cast<int>(x * n), 0, n - 1);
    const int cj = std::clamp(static_cast<int>(y * n), 0, n - 1);

    PointLocation best{-1, 0.0, 0.0};
    double best_violation = 1e300;
    for (int local = 0; local < 2; ++local) {
        const int t = 2 * (cj * n + ci) + local;
        const ElementGeometry g = element_geometry(mesh, t);
        const double rx = x - g.x0, ry = y - g.y0;
        const double xi = (g.jac[1][1] * rx - g.jac[0][1] * ry) / g.det;
        const double eta = (-g.jac[1][0] * rx + g.jac[0][0] * ry) / g.det;
        const double violation = std::max({-xi, -eta, xi + eta - 1.0, 0.0});
        if (violation < best_violation) {
            best_violation = violation;
            best = {t, xi, eta};
        }
    }
    if (best_violation > 1e-9)
        throw InvalidArgumentError("locate_point: containing cell lookup failed");
    return best;
}

Gamma1Trace extract_gamma1_trace(const Mesh& mesh) {
    const int n = mesh.n;
    Gamma1Trace trace;
    trace.m = n;
    trace.p2_nodes.reserve(2 * n + 1);
    trace.x.reserve(2 * n + 1);
    for (int r = 0; r <= 2 * n; ++r) {
        trace.p2_nodes.push_back(mesh.p2_node_id(r, 2 * n));
        trace.x.push_back(r / (2.0 * n));
    }
    trace.seg_len.reserve(n);
    for (int i = 0; i < n; ++i)
        trace.seg_len.push_back(trace.x[2 * i + 2] - trace.x[2 * i]);
    return trace;
}

} // namespace sfstokes
