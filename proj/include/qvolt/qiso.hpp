// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "qvolt/crossed.hpp"

namespace qvolt {

/// Quantum isomorphism certificate between the tensor-product realization
/// (trivial-action crossed product) and a crossed product of the same base.
/// rho maps the source into target (x) B(H) with H = L^2(G); it is stored as
/// an n x n array of target-dim x source-dim blocks: rho(x) =
/// sum_{zeta,eta} rho[zeta][eta](x) (x) E_{zeta,eta}.
struct QuantumIsomorphismCertificate {
  CrossedProductPtr source;  // trivial action
  CrossedProductPtr target;
  std::size_t hilbert_dim = 0;
  std::vector<std::vector<Matrix>> rho;
  CheckReport report;

  /// The unitary p: L^2(source) (x) H -> L^2(target) (x) H, slot-major
  /// (index = slot * dim + coordinate).
  Matrix p_matrix() const;
};

/// The canonical quantum isomorphism b (x) u~_chi |-> sum_zeta u_zeta b
/// u_zeta^* u_chi (x) E_{zeta, chi^{-1} zeta} for a validated voltage
/// quantum graph; verifies homomorphism, star, unit, psi- and
/// comultiplication-compatibility, unitarity of p, and the closed forms of
/// p and p^dagger. Throws Error when any residual exceeds tol.
QuantumIsomorphismCertificate canonical_rho(const VoltageQuantumGraph& vqg,
                                            double tol = kDefaultTol);

/// Residual of (A_crossed (x) Id) rho = rho A_tensor over all blocks.
double verify_graph_intertwining(const QuantumIsomorphismCertificate& cert,
                                 const Matrix& a_crossed,
                                 const Matrix& a_tensor);

/// Derived graphs of the same components under the given action and the
/// trivial action, with the connecting certificate.
struct DerivedPair {
  DerivedQuantumGraph crossed;
  DerivedQuantumGraph tensor;
  QuantumIsomorphismCertificate certificate;
  double intertwining_residual = 0.0;
};

DerivedPair certify_derived_pair(const VoltageQuantumGraph& vqg,
                                 double tol = kDefaultTol);

/// Quotient of a digraph by a free abelian action, labeled so that the
/// derived graph of the quotient reproduces the input exactly.
struct QuotientResult {
  ClassicalVoltageGraph quotient;
  /// derived_to_input[o * |G| + g] is the input vertex identified with the
  /// derived vertex (orbit o, group element g).
  std::vector<std::size_t> derived_to_input;
};

/// action[g][v] is the image of vertex v under group element g (indexed by
/// group enumeration order). The action must be a free action by digraph
/// automorphisms; errors name a fixed vertex or a broken edge.
QuotientResult quotient_voltage_graph(
    const ClassicalDigraph& gamma, const FiniteAbelianGroup& group,
    const std::vector<std::vector<std::size_t>>& action);

/// Quantum twin of a classical graph: the derived quantum graph of the
/// quotient voltage graph under a nontrivial dual action, plus the
/// certificate connecting it back to the input graph.
struct TwinResult {
  QuotientResult quotient;
  DerivedPair pair;
  /// Residual of the tensor-side derived graph matching the input adjacency
  /// under the canonical identification.
  double classical_match_residual = 0.0;
};

TwinResult quantum_twin(const ClassicalDigraph& gamma,
                        const FiniteAbelianGroup& group,
                        const std::vector<std::vector<std::size_t>>& free_action,
                        const std::vector<std::vector<std::size_t>>& dual_action,
                        double tol = kDefaultTol);

/// Isomorphism of Lemma-type between a trivial-action crossed product over a
/// classical base and the classical set on V x G (V-major):
/// e_v u_chi |-> sum_g chi(g) e_{(v,g)}.
Matrix classical_crossed_identification(const CrossedProductQuantumSet& cp);

/// Exhaustive search for dual actions on a classical voltage graph: vertex
/// permutations per character preserving every g-labeled edge set. Heuristic
/// convenience for at most 8 vertices; cyclic groups only.
std::vector<std::vector<std::vector<std::size_t>>> enumerate_dual_actions(
    const ClassicalVoltageGraph& cvg);

}  // namespace qvolt
