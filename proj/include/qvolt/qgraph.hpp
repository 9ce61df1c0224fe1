// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qvolt/fdca.hpp"

namespace qvolt {

/// A verified quantum adjacency matrix: Schur-idempotent
/// (m(A (x) A)m* = A) and *-preserving (A(b*) = A(b)* for all b).
///
/// Matrix convention throughout: entry (r, c) is the coefficient of basis
/// element r in the image of basis element c. For a classical digraph this
/// means column = source vertex, row = target vertex.
struct QuantumAdjacency {
  QuantumSetPtr ambient;
  Matrix matrix;
  double schur_residual = 0.0;
  double star_residual = 0.0;
};

/// m(A (x) B)m* on the ambient quantum set: the Schur (intersection)
/// product. Not guaranteed to be a quantum adjacency again.
Matrix schur_product_matrix(const QuantumSet& qs, const Matrix& a,
                            const Matrix& b);

/// Residuals of the two quantum-adjacency conditions.
struct AdjacencyCheck {
  double schur_residual = 0.0;
  double star_residual = 0.0;
  bool pass(double tol) const {
    return schur_residual < tol && star_residual < tol;
  }
};

AdjacencyCheck check_quantum_adjacency(const QuantumSet& qs, const Matrix& a);

/// Verifies and wraps; throws Error naming the larger residual on failure.
QuantumAdjacency verify_quantum_adjacency(QuantumSetPtr ambient, Matrix a,
                                          double tol);

/// Schur product of two verified adjacencies on the same ambient.
LinearMapOnB schur_product(const QuantumAdjacency& a1,
                           const QuantumAdjacency& a2);

/// m(A (x) Id)m* residual; zero means loopfree.
double loopfree_residual(const QuantumAdjacency& a);

/// ||A - A^dagger|| with the adjoint taken in the GNS inner product.
double undirected_residual(const QuantumAdjacency& a);

struct RegularityReport {
  double degree = 0.0;
  double residual = 0.0;  // ||A(1) - degree * 1||
};

RegularityReport regularity_degree(const QuantumAdjacency& a);

/// Simple directed graph with labeled vertices; loops allowed.
struct ClassicalDigraph {
  std::vector<std::string> vertices;
  /// adj[src][dst] == 1 iff there is an edge src -> dst.
  std::vector<std::vector<int>> adj;

  static ClassicalDigraph empty(std::vector<std::string> vertices);
  std::size_t size() const { return vertices.size(); }
  void add_edge(std::size_t src, std::size_t dst) { adj[src][dst] = 1; }
  bool has_edge(std::size_t src, std::size_t dst) const {
    return adj[src][dst] != 0;
  }
  std::size_t edge_count() const;
  std::size_t vertex_index(const std::string& label) const;
  /// The matrix of the induced linear map on C^V (column = source).
  Matrix adjacency_map() const;
  bool operator==(const ClassicalDigraph&) const = default;
};

/// The digraph as a quantum adjacency on (C^V, psi_V).
QuantumAdjacency classical_to_quantum(const ClassicalDigraph& dg,
                                      double tol = kDefaultTol);

/// Inverse direction; requires a classical ambient and 0/1 entries within
/// tol/2, otherwise throws Error("not classical...").
ClassicalDigraph quantum_to_classical(const QuantumAdjacency& a, double tol);

/// Adjacency-preserving vertex bijection between two digraphs with at most
/// 16 vertices, found by degree-refinement pruned backtracking. Returns the
/// image of each vertex of d1 in d2, or nullopt when none exists.
std::optional<std::vector<std::size_t>> digraph_isomorphic(
    const ClassicalDigraph& d1, const ClassicalDigraph& d2);

}  // namespace qvolt
