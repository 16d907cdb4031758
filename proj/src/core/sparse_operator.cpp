#include "core/sparse_operator.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace sfstokes {

void SparseOperator::finalize() {
    if (finalized) return;
    std::stable_sort(triplets.begin(), triplets.end(),
                     [](const Eigen::Triplet<double>& a, const Eigen::Triplet<double>& b) {
                         return a.row() != b.row() ? a.row() < b.row()
                                                   : a.col() < b.col();
                     });
    csr.resize(rows, cols);
    csr.setFromTriplets(triplets.begin(), triplets.end());
    csr.makeCompressed();
    finalized = true;
}

} // namespace sfstokes
