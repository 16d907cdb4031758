#include "core/saddle.hpp"

#include <cmath>
#include <random>

#include "core/errors.hpp"

#ifdef SFSTOKES_WITH_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/SparseLU>
#endif

namespace sfstokes {

struct SaddleFactorization::Solver {
#ifdef SFSTOKES_WITH_UMFPACK
    Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu;
#else
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
#endif
};

SaddleFactorization::~SaddleFactorization() = default;
SaddleFactorization::SaddleFactorization(SaddleFactorization&&) noexcept = default;
SaddleFactorization& SaddleFactorization::operator=(SaddleFactorization&&) noexcept = default;

SaddleSystem make_saddle_system(const SparseOperator& a, const SparseOperator& b,
                                const Eigen::VectorXd& pressure_integral,
                                PressureGauge gauge) {
    if (a.rows != a.cols) throw InvalidArgumentError("saddle system: A must be square");
    if (b.cols != a.cols)
        throw InvalidArgumentError("saddle system: B column count must match A");
    if (gauge == PressureGauge::MeanZero && pressure_integral.size() != b.rows)
        throw InvalidArgumentError("saddle system: gauge vector size must match B rows");
    SaddleSystem sys;
    sys.a = &a;
    sys.b = &b;
    sys.gauge_row = pressure_integral;
    sys.gauge = gauge;
    sys.n_u = a.rows;
    sys.n_p = b.rows;
    return sys;
}

SaddleFactorization::SaddleFactorization(const SaddleSystem& sys) {
    nu_ = sys.n_u;
    np_ = sys.n_p;
    extra_ = sys.gauge == PressureGauge::MeanZero ? 1 : 0;
    gauge_row_ = sys.gauge_row;
    const int n = nu_ + np_ + extra_;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(sys.a->triplets.size() + 2 * sys.b->triplets.size() + 2 * np_);
    for (int r = 0; r < sys.a->csr.outerSize(); ++r)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys.a->csr, r); it; ++it)
            trip.emplace_back(r, it.col(), it.value());
    for (int r = 0; r < sys.b->csr.outerSize(); ++r)
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys.b->csr, r); it; ++it) {
            trip.emplace_back(nu_ + r, it.col(), it.value());
            trip.emplace_back(it.col(), nu_ + r, it.value());
        }
    if (extra_) {
        for (int q = 0; q < np_; ++q) {
            const double v = sys.gauge_row[q];
            if (v != 0.0) {
                trip.emplace_back(nu_ + np_, nu_ + q, v);
                trip.emplace_back(nu_ + q, nu_ + np_, v);
            }
        }
    }
    kkt_.resize(n, n);
    kkt_.setFromTriplets(trip.begin(), trip.end());
    kkt_.makeCompressed();

    // The matrix that is factorized. In MeanZero mode the bordered system is
    // solved through an equivalent substitute: the gauge makes the continuity
    // rows sum to zero, so continuity row 0 is redundant and can be replaced
    // by the pin "p_0 = 0" without changing the velocity; the pressure is
    // shifted to the gauge afterwards. The dense gauge row/column would
    // otherwise destroy the sparse-factorization fill-in (and the returned
    // solution is still verified against the bordered operator in solve()).
    if (extra_) {
        std::vector<Eigen::Triplet<double>> ptrip;
        ptrip.reserve(trip.size());
        for (const auto& t : trip) {
            if (t.row() == nu_ + np_ || t.col() == nu_ + np_) continue; // border
            if (t.row() == nu_ + 0) continue;                           // continuity row 0
            ptrip.push_back(t);
        }
        ptrip.emplace_back(nu_ + 0, nu_ + 0, 1.0);
        pinned_.resize(nu_ + np_, nu_ + np_);
        pinned_.setFromTriplets(ptrip.begin(), ptrip.end());
        pinned_.makeCompressed();
    }
    const Eigen::SparseMatrix<double>& fact_mat = extra_ ? pinned_ : kkt_;

    lu_ = std::make_unique<Solver>();
    lu_->lu.compute(fact_mat);
    if (lu_->lu.info() != Eigen::Success)
        throw SingularSystemError("saddle factorization failed", -1);

    // A factorization of an (almost) singular matrix can still "succeed";
    // probe with a fixed random right-hand side and check the residual.
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd probe(fact_mat.rows());
    for (int i = 0; i < probe.size(); ++i) probe[i] = dist(rng);
    const Eigen::VectorXd x = lu_->lu.solve(probe);
    if (!x.allFinite())
        throw SingularSystemError("saddle system is numerically singular (non-finite solve)", -1);
    const Eigen::VectorXd res = fact_mat * x - probe;
    const double rel = res.norm() / probe.norm();
    if (rel > 1e-8) {
        long worst = 0;
        res.cwiseAbs().maxCoeff(&worst);
        throw SingularSystemError(
            "saddle system is numerically singular (probe residual " +
                std::to_string(rel) + ", worst row " + std::to_string(worst) + ")",
            worst);
    }
}

SaddleSolution SaddleFactorization::solve(const Eigen::VectorXd& rhs_momentum) const {
    if (rhs_momentum.size() != nu_)
        throw InvalidArgumentError("saddle solve: rhs size must equal velocity dof count");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nu_ + np_);
    rhs.head(nu_) = rhs_momentum;
    Eigen::VectorXd x = lu_->lu.solve(rhs);
    if (!x.allFinite())
        throw SingularSystemError("saddle solve: non-finite solution", -1);

    if (extra_) {
        // Shift the pressure onto the gauge; for a momentum-only rhs the
        // bordered system's exact solution has gauge multiplier 0.
        const double total = gauge_row_.sum();
        const double shift = gauge_row_.dot(x.segment(nu_, np_)) / total;
        x.segment(nu_, np_).array() -= shift;
    }

    // Verify against the full (bordered, in MeanZero mode) operator.
    const int n = nu_ + np_ + extra_;
    Eigen::VectorXd x_full = Eigen::VectorXd::Zero(n);
    x_full.head(nu_ + np_) = x;
    Eigen::VectorXd rhs_full = Eigen::VectorXd::Zero(n);
    rhs_full.head(nu_) = rhs_momentum;
    const double rhs_norm = rhs_full.norm();
    const double rel = rhs_norm > 0 ? (kkt_ * x_full - rhs_full).norm() / rhs_norm
                                    : (kkt_ * x_full).norm();
    if (rel > 1e-10)
        throw SingularSystemError("saddle solve: relative residual " + std::to_string(rel) +
                                      " exceeds 1e-10",
                                  -1);

    SaddleSolution sol;
    sol.u = x.head(nu_);
    sol.p = x.segment(nu_, np_);
    sol.gauge_multiplier = 0.0;
    sol.residual = rel;
    return sol;
}

} // namespace sfstokes
