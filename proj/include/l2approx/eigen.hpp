#pragma once

#include "l2approx/coefficients.hpp"

#include <vector>

namespace l2approx {

struct SymmetricEigen {
    int n = 0;
    /// Ascending.
    std::vector<double> values;
    /// Row-major n x n; column j is the eigenvector of values[j]. Empty unless requested.
    std::vector<double> vectors;
};

/// Real symmetric eigensolver (Householder tridiagonalization, implicit-shift QL).
/// `a` is row-major n x n; only the lower triangle is read.
SymmetricEigen symmetric_eigen(std::vector<double> a, int n, bool want_vectors = false);

/// Eigenvalues of a complex Hermitian matrix via the 2n x 2n real symmetric embedding.
std::vector<double> hermitian_eigenvalues(const std::vector<Complex>& a, int n);

}  // namespace l2approx
