#pragma once

#include <Eigen/Sparse>
#include <vector>

namespace sfstokes {

// Assembly accumulates (row, col, value) triplets; finalize() sorts them into
// a canonical order (so the summation order never depends on assembly order)
// and compresses to CSR. Duplicate coordinates are summed.
struct SparseOperator {
    int rows = 0;
    int cols = 0;
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::SparseMatrix<double, Eigen::RowMajor> csr;
    bool finalized = false;

    SparseOperator() = default;
    SparseOperator(int r, int c) : rows(r), cols(c) {}

    void add(int r, int c, double v) { triplets.emplace_back(r, c, v); }

    void finalize();

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return csr * x; }

    // largest absolute entry of A*x
    double apply_max_abs(const Eigen::VectorXd& x) const {
        return (csr * x).cwiseAbs().maxCoeff();
    }

    double quad_form(const Eigen::VectorXd& x) const { return x.dot(csr * x); }
};

} // namespace sfstokes
