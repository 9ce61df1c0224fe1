// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qvolt/matrix.hpp"

namespace qvolt {

/// LU factorization with partial pivoting of a square matrix.
class LuFactors {
 public:
  explicit LuFactors(Matrix a);

  CVec solve(const CVec& b) const;
  Matrix solve(const Matrix& b) const;

  std::size_t dim() const { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
};

Matrix inverse(const Matrix& a);

/// Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.
/// values are sorted ascending; vectors' columns are the matching
/// orthonormal eigenvectors (standard inner product).
struct HermitianEigen {
  std::vector<double> values;
  Matrix vectors;
};

HermitianEigen eigh(const Matrix& a);

/// Orthonormal basis (columns, standard inner product) of the kernel of m,
/// i.e. eigenvectors of m^H m whose eigenvalue is below cutoff^2.
Matrix nullspace(const Matrix& m, double cutoff);

/// Groups sorted eigenvalues into clusters whose consecutive gaps are < gap.
std::vector<std::pair<std::size_t, std::size_t>> cluster_sorted(
    const std::vector<double>& values, double gap);

}  // namespace qvolt
