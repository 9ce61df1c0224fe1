// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "qvolt/voltage.hpp"

namespace qvolt {

/// Crossed product of a quantum set by a dual-group action. The underlying
/// algebra has basis (b_i u_chi) ordered chi-block-major (character blocks in
/// dual enumeration order, base basis order within each block), with
///   (b u_chi)(c u_xi) = b alpha_chi(c) u_{chi xi}
///   (b u_chi)^*       = alpha_{chi^{-1}}(b^*) u_{chi^{-1}}
///   psi(b u_chi)      = n delta_{chi=1} psi~(b),        n = |G|.
struct CrossedProductQuantumSet {
  QuantumSetPtr qset;
  QuantumSetPtr base;
  DualAction action;
  /// Coordinates of the unitaries u_chi, per character index.
  std::vector<CVec> u;
  /// Scaled conditional expectation E: crossed -> base, (b u_chi) -> n
  /// delta_{chi=1} b, and its GNS adjoint (the inclusion of the base at the
  /// trivial character).
  Matrix expectation;
  Matrix expectation_adjoint;

  std::size_t base_dim() const { return base->dim(); }
  std::size_t group_order() const { return action.group.order(); }
  std::size_t dim() const { return qset->dim(); }
  /// Basis index of b_i u_chi.
  std::size_t index(std::size_t chi, std::size_t i) const {
    return chi * base_dim() + i;
  }
};

using CrossedProductPtr = std::shared_ptr<const CrossedProductQuantumSet>;

/// Builds the crossed product quantum set; the dual action is validated
/// first and the resulting algebra is verified as a quantum set.
CrossedProductPtr crossed_product(QuantumSetPtr base, const DualAction& action,
                                  double tol = kDefaultTol);

/// Residuals of the structural identities of a crossed product: the
/// block-diagonal inner product formula, the comultiplication formula, the
/// unitary representation property of the u_chi, and E* being the inclusion.
CheckReport crossed_product_structure_report(
    const CrossedProductQuantumSet& cp, double tol);

/// X_g = (1/n) sum_chi conj(chi(g)) u_chi u_chi^dagger, as a verified
/// quantum adjacency on the crossed product.
QuantumAdjacency x_map(const CrossedProductPtr& cp, const GroupElement& g);
Matrix x_map_matrix(const CrossedProductQuantumSet& cp, std::size_t g_index);

/// Derived quantum graph sum_g m(X_g (x) E* A~_g E)m* of a voltage quantum
/// graph, together with the per-term identity and swap residuals.
struct DerivedQuantumGraph {
  CrossedProductPtr crossed;
  QuantumAdjacency adjacency;
  CheckReport report;
};

DerivedQuantumGraph derived_quantum_graph(const VoltageQuantumGraph& vqg,
                                          double tol = kDefaultTol);

/// Hypothesis residuals on the voltage side and conclusion residuals on the
/// derived side for loopfreeness, undirectedness, and regularity.
struct PropertyTransfer {
  double voltage_loopfree = 0.0;
  double derived_loopfree = 0.0;
  double voltage_undirected = 0.0;
  double derived_undirected = 0.0;
  double voltage_regularity = 0.0;
  double derived_regularity = 0.0;
  double voltage_degree = 0.0;
  double derived_degree = 0.0;

  /// Every hypothesis holding within tol implies its conclusion within tol.
  bool consistent(double tol) const;
};

PropertyTransfer property_transfer_report(const VoltageQuantumGraph& vqg,
                                          double tol = kDefaultTol);

/// The generator assignment identifying C^2 x|_swap Z2-hat with M_2: basis
/// (e_0 u_0, e_1 u_0, e_0 u_1, e_1 u_1) maps to the matrix units
/// (E(0,0), E(1,1), E(0,1), E(1,0)). Returns the 4x4 permutation matrix.
Matrix z2_swap_generator_assignment();

/// Full pipeline for the two-vertex swap-symmetric Z2 voltage family with
/// components A~_0 = antidiag(b0, b0), A~_1 = [[a1, b1], [b1, a1]]; returns
/// the derived adjacency in the M_2 matrix-unit basis next to the closed
/// form it must equal.
struct ParametricZ2Result {
  Matrix derived;
  Matrix closed_form;
  double residual = 0.0;
};

ParametricZ2Result parametric_z2_derived(int b0, int a1, int b1,
                                         double tol = kDefaultTol);

}  // namespace qvolt
