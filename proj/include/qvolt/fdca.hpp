// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qvolt/abelian.hpp"
#include "qvolt/linalg.hpp"
#include "qvolt/matrix.hpp"

namespace qvolt {

inline constexpr double kDefaultTol = 1e-9;

/// One named residual of a verification run.
struct Check {
  std::string name;
  double residual = 0.0;
};

/// A list of named residuals; passes when every residual is below tol.
struct CheckReport {
  std::vector<Check> checks;

  void add(std::string name, double residual) {
    checks.push_back({std::move(name), residual});
  }
  void merge(const CheckReport& other, const std::string& prefix = "");
  double max_residual() const;
  bool pass(double tol) const { return max_residual() < tol; }
  const Check* find(const std::string& name) const;
};

/// Finite-dimensional *-algebra with a functional, given by structure
/// constants over a fixed basis b_0, ..., b_{dim-1}:
///   mult:  dim x dim^2, column i*dim+j holds the coordinates of b_i * b_j
///   star:  dim x dim, column i holds the coordinates of (b_i)^*
///   unit:  coordinates of the algebra unit
///   psi:   psi(b_i) per basis element
struct StarAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  Matrix mult;
  Matrix star;
  CVec unit;
  CVec psi;

  CVec multiply(const CVec& a, const CVec& b) const;
  /// Conjugate-linear star on coordinates: x -> star * conj(x).
  CVec star_of(const CVec& x) const;
  Complex psi_of(const CVec& x) const;
  Matrix left_mult(const CVec& a) const;
  Matrix right_mult(const CVec& a) const;
  /// Gram matrix of the GNS inner product, G_ij = psi(b_i^* b_j).
  Matrix gram() const;
};

/// Checks the *-algebra axioms (associativity, unit, involution,
/// antimultiplicativity, hermitian functional). Throws Error naming the
/// violated basis triple for structural failures.
CheckReport verify_star_algebra(const StarAlgebra& alg, double tol);

/// Residuals of the quantum-set axioms on top of the *-algebra axioms.
struct QuantumSetReport {
  double mm_star_residual = 0.0;
  double gram_min_eigenvalue = 0.0;
  double counit_residual = 0.0;
  double coassoc_residual = 0.0;

  bool pass(double tol) const {
    return mm_star_residual < tol && counit_residual < tol &&
           coassoc_residual < tol && gram_min_eigenvalue > tol;
  }
};

/// Verifies that (alg, psi) is a quantum set: the multiplication map must
/// satisfy m m* = Id for the GNS adjoint m* = (G (x) G)^{-1} m^H G.
/// Throws Error if alg violates the *-algebra axioms.
QuantumSetReport verify_quantum_set(const StarAlgebra& alg, double tol);

/// A verified quantum set: a *-algebra whose functional passed the
/// m m* = Id check, with the Gram matrix and comultiplication cached.
/// Immutable after construction.
class QuantumSet {
 public:
  /// Verifies and caches; throws Error when verification fails.
  static QuantumSet create(StarAlgebra alg, double tol = kDefaultTol);

  const StarAlgebra& algebra() const { return alg_; }
  std::size_t dim() const { return alg_.dim; }
  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inv_; }
  /// m* as a dim^2 x dim matrix.
  const Matrix& comult() const { return comult_; }
  const Matrix& mult() const { return alg_.mult; }
  double tol() const { return tol_; }
  const QuantumSetReport& report() const { return report_; }

  /// GNS inner product <a, b> = psi(a^* b), conjugate-linear in a.
  Complex inner(const CVec& a, const CVec& b) const;

  /// Adjoint of a linear map B -> B with respect to the GNS inner product:
  /// G^{-1} T^H G.
  Matrix adjoint_map(const Matrix& t) const;

 private:
  QuantumSet() = default;

  StarAlgebra alg_;
  Matrix gram_;
  Matrix gram_inv_;
  Matrix comult_;
  double tol_ = kDefaultTol;
  QuantumSetReport report_;
};

using QuantumSetPtr = std::shared_ptr<const QuantumSet>;

/// Adjoint of T: dom -> cod between two quantum sets.
Matrix adjoint_map_between(const QuantumSet& dom, const QuantumSet& cod,
                           const Matrix& t);

/// A linear map together with the quantum set it acts on.
struct LinearMapOnB {
  QuantumSetPtr ambient;
  Matrix matrix;
};

/// (C^size, psi) with psi(e_v) = 1: the quantum set of a classical set.
QuantumSetPtr make_classical_set(std::size_t size, double tol = kDefaultTol);

/// (M_n, n Tr) in the matrix-unit basis E_ij, row-major.
QuantumSetPtr make_tracial_matrix_set(std::size_t n, double tol = kDefaultTol);

/// Direct sum of tracial matrix sets; block sizes [n_1, ..., n_k] give
/// the algebra M_{n_1} (+) ... (+) M_{n_k} with psi = sum_i n_i Tr_i.
QuantumSetPtr make_tracial_blocks_set(const std::vector<std::size_t>& blocks,
                                      double tol = kDefaultTol);

/// C(G) with the indicator basis (e_g) as primary basis plus the character
/// basis u~_chi with u~_chi(g) = chi(g); basis-change matrices are cached.
struct GroupAlgebraSet {
  QuantumSetPtr qset;
  FiniteAbelianGroup group;
  /// Column chi holds the indicator-basis coordinates of u~_chi.
  Matrix char_to_indicator;
  Matrix indicator_to_char;

  CVec char_function(std::size_t chi_index) const {
    return char_to_indicator.column(chi_index);
  }
};

GroupAlgebraSet group_algebra_set(const FiniteAbelianGroup& group,
                                  double tol = kDefaultTol);

/// Tensor product quantum set; basis (a_i (x) b_j) indexed i*dim_b + j.
QuantumSetPtr tensor_product_qset(const QuantumSet& a, const QuantumSet& b,
                                  double tol = kDefaultTol);

/// True when the quantum set has the structure constants, star, and
/// functional of a classical set (C^dim, psi) exactly within tol.
bool is_classical_set(const QuantumSet& qs, double tol);

/// Residuals for phi: B1 -> B2 being an isomorphism of quantum sets:
/// multiplicative, star-preserving, unital, invertible, psi2 . phi = psi1.
CheckReport verify_qset_isomorphism(const Matrix& phi, const QuantumSet& qs1,
                                    const QuantumSet& qs2, double tol);

/// Block (Wedderburn) decomposition of a quantum set's algebra.
struct BlockDecomposition {
  struct Block {
    std::size_t size = 0;
    /// Functional weight: psi(x) = sum_i Tr(weight_i x_i) under the iso.
    Matrix weight;
  };
  std::vector<Block> blocks;
  /// iso maps basis coordinates to coordinates in the block matrix-unit
  /// basis (block-major, row-major units within each block).
  Matrix iso;
  Matrix iso_inv;
  CheckReport report;
};

/// Decomposes the algebra into full matrix blocks by splitting the center
/// with a seeded random hermitian central element and building matrix units
/// per block. Deterministic for a fixed seed.
BlockDecomposition wedderburn_decompose(const QuantumSet& qs, double tol,
                                        std::uint64_t seed = 0);

}  // namespace qvolt
