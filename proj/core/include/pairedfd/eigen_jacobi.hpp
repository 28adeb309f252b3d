#pragma once

#include <vector>

#include "pairedfd/fda.hpp"

namespace pairedfd {

struct SymmetricEigen {
    std::vector<double> values;  // descending
    Matrix vectors;              // column j is the unit eigenvector for values[j]
    int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Iterates until the
/// off-diagonal Frobenius norm falls below `tolerance` times the Frobenius norm
/// of the input; throws NumericalError after `max_sweeps` sweeps.
SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance = 1e-12,
                            int max_sweeps = 100);

}  // namespace pairedfd
