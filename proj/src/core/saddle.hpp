#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "core/sparse_operator.hpp"

namespace sfstokes {

enum class PressureGauge {
    MeanZero, // border the system with the pressure-mean row/column
    Full,     // pressure space used as-is
};

// Indefinite block system [A B^T; B 0], optionally bordered by the pressure
// integral vector when the divergence rows are rank deficient.
struct SaddleSystem {
    const SparseOperator* a = nullptr;
    const SparseOperator* b = nullptr;
    Eigen::VectorXd gauge_row; // pressure integrals; used when MeanZero
    PressureGauge gauge = PressureGauge::Full;
    int n_u = 0;
    int n_p = 0;

    int size() const { return n_u + n_p + (gauge == PressureGauge::MeanZero ? 1 : 0); }
};

SaddleSystem make_saddle_system(const SparseOperator& a, const SparseOperator& b,
                                const Eigen::VectorXd& pressure_integral,
                                PressureGauge gauge);

struct SaddleSolution {
    Eigen::VectorXd u;
    Eigen::VectorXd p;
    double gauge_multiplier = 0.0;
    double residual = 0.0; // relative residual of the assembled system
};

// Direct LU factorization; reusable across many right-hand sides.
class SaddleFactorization {
  public:
    // Throws SingularSystemError when the factorization fails or when a
    // verification solve shows the matrix is numerically singular.
    explicit SaddleFactorization(const SaddleSystem& sys);
    ~SaddleFactorization();
    SaddleFactorization(SaddleFactorization&&) noexcept;
    SaddleFactorization& operator=(SaddleFactorization&&) noexcept;

    // Solves with momentum right-hand side f (continuity rows zero).
    // Throws SingularSystemError if the relative residual exceeds 1e-10.
    SaddleSolution solve(const Eigen::VectorXd& rhs_momentum) const;

    int n_u() const { return nu_; }
    int n_p() const { return np_; }

  private:
    struct Solver; // hides the sparse LU backend
    Eigen::SparseMatrix<double> kkt_;    // full operator, used for residual checks
    Eigen::SparseMatrix<double> pinned_; // factored substitute in MeanZero mode
    Eigen::VectorXd gauge_row_;
    std::unique_ptr<Solver> lu_;
    int nu_ = 0, np_ = 0, extra_ = 0;
};

} // namespace sfstokes
