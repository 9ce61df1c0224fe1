// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qvolt/abelian.hpp"
#include "qvolt/fdca.hpp"
#include "qvolt/qgraph.hpp"

namespace qvolt {

/// Directed multigraph edge with a group label.
struct LabeledEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  GroupElement label;

  bool operator==(const LabeledEdge&) const = default;
};

/// Classical voltage graph: vertices, a finite abelian group, and a multiset
/// of group-labeled directed edges (loops allowed).
struct ClassicalVoltageGraph {
  std::vector<std::string> vertices;
  FiniteAbelianGroup group;
  std::vector<LabeledEdge> edges;

  std::size_t vertex_index(const std::string& label) const;
};

struct PreSimpleReport {
  bool pre_simple = true;
  /// A duplicated (src, dst, label) triple when not pre-simple.
  std::optional<LabeledEdge> duplicate;
};

/// Pre-simple: at most one edge per (src, dst, label) triple; exactly the
/// condition making the derived graph simple.
PreSimpleReport is_pre_simple(const ClassicalVoltageGraph& cvg);

/// Ensures for every edge (u, v, g) the reversed edge (v, u, g^{-1}) is
/// present; idempotent.
ClassicalVoltageGraph symmetrize(const ClassicalVoltageGraph& cvg);

/// Derived graph on V x G (V-major vertex order): every edge (u, v, g) and
/// h in G contribute the edge (u, h) -> (v, h*g). Requires a pre-simple
/// input; throws Error naming the duplicate otherwise.
ClassicalDigraph classical_derived_graph(const ClassicalVoltageGraph& cvg);

/// Derived edge multiset without the pre-simplicity requirement, as pairs of
/// V x G indices; the general construction allows parallel edges.
std::vector<std::pair<std::size_t, std::size_t>> classical_derived_multigraph(
    const ClassicalVoltageGraph& cvg);

/// Vertex labels of the derived graph, V-major: "v@g".
std::vector<std::string> derived_vertex_labels(const ClassicalVoltageGraph& cvg);

/// An action of the dual group on a quantum set: one *-automorphism per
/// character (in dual enumeration order) preserving the functional.
struct DualAction {
  QuantumSetPtr base;
  FiniteAbelianGroup group;
  std::vector<Matrix> maps;

  const Matrix& map_of(std::size_t chi_index) const { return maps[chi_index]; }
};

DualAction trivial_dual_action(QuantumSetPtr base,
                               const FiniteAbelianGroup& group);

/// Dual action on a classical base given by a vertex permutation per
/// character; perm[chi][v] is the image of vertex v.
DualAction permutation_dual_action(
    QuantumSetPtr base, const FiniteAbelianGroup& group,
    const std::vector<std::vector<std::size_t>>& perms);

/// Residuals: each map a *-automorphism, psi-preserving, and a group
/// homomorphism with the trivial character acting as the identity.
CheckReport verify_dual_action(const DualAction& action, double tol);

/// Voltage quantum graph: a G-indexed family of quantum adjacency matrices
/// on a base quantum set, each commuting with the dual action.
struct VoltageQuantumGraph {
  QuantumSetPtr base;
  FiniteAbelianGroup group;
  DualAction action;
  /// Component matrices in group enumeration order.
  std::vector<Matrix> components;
};

/// Per-component adjacency residuals plus per-(g, chi) commutation
/// residuals with the dual action.
CheckReport verify_voltage_quantum_graph(const VoltageQuantumGraph& vqg,
                                         double tol);

/// Builds and validates; throws Error on any failed residual.
VoltageQuantumGraph make_voltage_quantum_graph(QuantumSetPtr base,
                                               const FiniteAbelianGroup& group,
                                               DualAction action,
                                               std::vector<Matrix> components,
                                               double tol);

/// Voltage quantum graph of a pre-simple classical voltage graph on
/// (C^V, psi_V) with the trivial action: component g is the adjacency map
/// of the g-labeled subgraph.
VoltageQuantumGraph classical_to_voltage_quantum(
    const ClassicalVoltageGraph& cvg, double tol = kDefaultTol);

}  // namespace qvolt
