#include "core/report_io.hpp"

#include <cmath>
#include <cstdio>

#include "core/errors.hpp"

namespace sfstokes {

namespace {

struct File {
    std::FILE* f;
    explicit File(const std::string& path) : f(std::fopen(path.c_str(), "w")) {
        if (!f) throw IoError("cannot open " + path + " for writing");
    }
    ~File() {
        if (f) std::fclose(f);
    }
    File(const File&) = delete;
    File& operator=(const File&) = delete;
};

// 6 significant digits, scientific
void put_sci(std::FILE* f, double v) { std::fprintf(f, "%.5e", v); }

} // namespace

void write_solution_vtk(const Mesh& mesh, const DofMap& dm,
                        const Eigen::VectorXd& u_free, const Eigen::VectorXd& p,
                        const std::string& path) {
    const Eigen::VectorXd full = prolong_to_full(dm, u_free);
    const int nn = mesh.p2_node_count();
    const int nt = mesh.triangle_count();

    // pressure at every node: nodal at vertices, edge-interpolated at midpoints
    std::vector<double> p_node(nn, 0.0);
    for (int t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangles[t];
        const auto& nodes = mesh.tri_p2_nodes[t];
        for (int a = 0; a < 3; ++a) p_node[nodes[a]] = p[tri[a]];
        p_node[nodes[3]] = 0.5 * (p[tri[0]] + p[tri[1]]);
        p_node[nodes[4]] = 0.5 * (p[tri[1]] + p[tri[2]]);
        p_node[nodes[5]] = 0.5 * (p[tri[2]] + p[tri[0]]);
    }

    File out(path);
    std::FILE* f = out.f;
    std::fprintf(f, "# vtk DataFile Version 3.0\n");
    std::fprintf(f, "stokes velocity/pressure field\n");
    std::fprintf(f, "ASCII\n");
    std::fprintf(f, "DATASET UNSTRUCTURED_GRID\n");
    std::fprintf(f, "POINTS %d double\n", nn);
    for (int node = 0; node < nn; ++node) {
        const auto xy = mesh.p2_coords(node);
        std::fprintf(f, "%.17g %.17g 0\n", xy[0], xy[1]);
    }
    std::fprintf(f, "CELLS %d %d\n", nt, 7 * nt);
    for (int t = 0; t < nt; ++t) {
        const auto& nd = mesh.tri_p2_nodes[t];
        std::fprintf(f, "6 %d %d %d %d %d %d\n", nd[0], nd[1], nd[2], nd[3], nd[4], nd[5]);
    }
    std::fprintf(f, "CELL_TYPES %d\n", nt);
    for (int t = 0; t < nt; ++t) std::fprintf(f, "22\n");
    std::fprintf(f, "POINT_DATA %d\n", nn);
    std::fprintf(f, "VECTORS velocity double\n");
    for (int node = 0; node < nn; ++node)
        std::fprintf(f, "%.17g %.17g 0\n", full[2 * node], full[2 * node + 1]);
    std::fprintf(f, "SCALARS pressure double\n");
    std::fprintf(f, "LOOKUP_TABLE default\n");
    for (int node = 0; node < nn; ++node) std::fprintf(f, "%.17g\n", p_node[node]);
}

void write_multiplier_csv(const Gamma1Trace& tr, const BoundaryTrace& lambda,
                          const std::string& path) {
    if (lambda.node_count() != tr.node_count())
        throw InvalidArgumentError("write_multiplier_csv: trace size mismatch");
    File out(path);
    std::fprintf(out.f, "x, lambda\n");
    for (int r = 0; r < tr.node_count(); ++r) {
        put_sci(out.f, tr.x[r]);
        std::fprintf(out.f, ", ");
        put_sci(out.f, lambda[r]);
        std::fprintf(out.f, "\n");
    }
}

void write_iteration_log_csv(const std::vector<UzawaLogRow>& log, const std::string& path) {
    File out(path);
    std::fprintf(out.f, "k, increment_h1, energy_residual, active_nodes\n");
    for (const auto& row : log) {
        std::fprintf(out.f, "%d, ", row.k);
        if (std::isnan(row.increment))
            std::fprintf(out.f, ", ");
        else {
            put_sci(out.f, row.increment);
            std::fprintf(out.f, ", ");
        }
        put_sci(out.f, row.energy_residual);
        std::fprintf(out.f, ", %d\n", row.active_nodes);
    }
}

void write_study_csv(const StudyResult& study, const std::string& path) {
    File out(path);
    std::fprintf(out.f, "N, h, h1_error, h1_rate, l2_error, l2_rate, k_itr\n");
    for (const auto& r : study.rows) {
        std::fprintf(out.f, "%d, ", r.n);
        put_sci(out.f, r.h);
        std::fprintf(out.f, ", ");
        put_sci(out.f, r.h1_err);
        std::fprintf(out.f, ", ");
        if (!std::isnan(r.h1_rate)) put_sci(out.f, r.h1_rate);
        std::fprintf(out.f, ", ");
        put_sci(out.f, r.l2_err);
        std::fprintf(out.f, ", ");
        if (!std::isnan(r.l2_rate)) put_sci(out.f, r.l2_rate);
        std::fprintf(out.f, ", %d\n", r.k_itr);
    }
}

void write_threshold_csv(const std::vector<ThresholdRow>& rows, const std::string& path) {
    File out(path);
    std::fprintf(out.f, "g, rho, max_trace, active_nodes, k_itr\n");
    for (const auto& r : rows) {
        put_sci(out.f, r.g);
        std::fprintf(out.f, ", ");
        put_sci(out.f, r.rho);
        std::fprintf(out.f, ", ");
        put_sci(out.f, r.max_trace);
        std::fprintf(out.f, ", %d, %d\n", r.active_nodes, r.k_itr);
    }
}

} // namespace sfstokes
