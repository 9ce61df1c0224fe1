// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "qvolt/crossed.hpp"
#include "qvolt/qgraph.hpp"

namespace qvolt {

/// A finite abelian group acting on a quantum graph together with a
/// covariant unitary representation of the dual group: the data required to
/// recognize the ambient quantum set as a crossed product.
struct GraphAction {
  QuantumSetPtr qset;
  FiniteAbelianGroup group;
  /// Automorphism matrix per group element (enumeration order).
  std::vector<Matrix> alpha;
  /// Coordinates of u_chi per character (dual enumeration order).
  std::vector<CVec> units;
  QuantumAdjacency target;
};

/// Residuals of all hypotheses: alpha a psi-preserving *-action commuting
/// with the adjacency, (u_chi) a unitary representation with
/// alpha_g(u_chi) = chi(g) u_chi, and psi and the adjacency invariant under
/// every Ad(u_chi).
CheckReport verify_landstad(const GraphAction& ga, double tol);

/// The canonical dual data on a crossed product: alpha_g(b u_chi) =
/// chi(g) b u_chi with the built-in unitaries.
GraphAction dual_graph_action(const CrossedProductPtr& cp,
                              const QuantumAdjacency& a);

/// Fixed-point algebra of the action with psi~ = (1/n) psi restricted,
/// an orthonormalized basis, and the restricted dual action Ad(u_chi).
struct FixedPointData {
  /// ambient-dim x fixed-dim; columns are psi~-orthonormal.
  Matrix basis;
  /// fixed-dim x ambient-dim; maps ambient coordinates of elements of the
  /// fixed-point algebra to their coordinates in the basis.
  Matrix coord_map;
  QuantumSetPtr fixed;
  DualAction dual;
  CheckReport report;
};

/// Throws Error("representation not regular ...") when dim(B) is not
/// |G| * dim(fixed points).
FixedPointData fixed_point_data(const GraphAction& ga, double tol);

/// The maps A~_chi with A(b u_chi) = A~_chi(b) u_chi on the fixed-point
/// algebra, per character, with their equivariance, convolution, and star
/// identities checked. Throws Error("graph not covariant...") when the
/// adjacency does not preserve the subspaces B^alpha u_chi.
struct FourierComponents {
  std::vector<Matrix> maps;
  CheckReport report;
};

FourierComponents fourier_components(const GraphAction& ga,
                                     const FixedPointData& fpd, double tol);

/// Voltage data A~_g = (1/n) sum_chi chi(g) A~_chi, assembled into a
/// validated voltage quantum graph, plus the isomorphism from the rebuilt
/// crossed product back onto the ambient quantum set and the residual of
/// the rebuilt derived graph matching the target adjacency.
struct ReconstructionResult {
  VoltageQuantumGraph vqg;
  DerivedQuantumGraph rebuilt;
  /// (fixed x| G-hat) -> ambient, column (chi, k) holds q_k * u_chi.
  Matrix identification;
  CheckReport report;
};

ReconstructionResult reconstruct_voltage(const GraphAction& ga,
                                         const FixedPointData& fpd,
                                         double tol);

}  // namespace qvolt
