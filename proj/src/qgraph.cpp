// SPDX-License-Identifier: Apache-2.0
#include "qvolt/qgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace qvolt {

Matrix schur_product_matrix(const QuantumSet& qs, const Matrix& a,
                            const Matrix& b) {
  const std::size_t d = qs.dim();
  if (a.rows() != d || a.cols() != d || b.rows() != d || b.cols() != d)
    throw Error("schur product: shape mismatch");
  return qs.mult() * Matrix::kron(a, b) * qs.comult();
}

AdjacencyCheck check_quantum_adjacency(const QuantumSet& qs, const Matrix& a) {
  AdjacencyCheck out;
  out.schur_residual = max_abs_diff(schur_product_matrix(qs, a, a), a);
  // A(b*) = A(b)* on the basis: A S = S conj(A).
  out.star_residual =
      max_abs_diff(a * qs.algebra().star, qs.algebra().star * a.conj());
  return out;
}

QuantumAdjacency verify_quantum_adjacency(QuantumSetPtr ambient, Matrix a,
                                          double tol) {
  if (!ambient) throw Error("quantum adjacency: missing ambient");
  const AdjacencyCheck c = check_quantum_adjacency(*ambient, a);
  if (!c.pass(tol)) {
    std::ostringstream os;
    os << "not a quantum adjacency matrix: ";
    if (c.schur_residual >= c.star_residual)
      os << "Schur-idempotence residual " << c.schur_residual;
    else
      os << "star-preservation residual " << c.star_residual;
    throw Error(os.str());
  }
  return QuantumAdjacency{std::move(ambient), std::move(a), c.schur_residual,
                          c.star_residual};
}

LinearMapOnB schur_product(const QuantumAdjacency& a1,
                           const QuantumAdjacency& a2) {
  if (a1.ambient != a2.ambient)
    throw Error("schur product: ambient quantum sets differ");
  return LinearMapOnB{a1.ambient,
                      schur_product_matrix(*a1.ambient, a1.matrix, a2.matrix)};
}

double loopfree_residual(const QuantumAdjacency& a) {
  const Matrix z = schur_product_matrix(*a.ambient, a.matrix,
                                        Matrix::identity(a.ambient->dim()));
  return z.max_abs();
}

double undirected_residual(const QuantumAdjacency& a) {
  return max_abs_diff(a.matrix, a.ambient->adjoint_map(a.matrix));
}

RegularityReport regularity_degree(const QuantumAdjacency& a) {
  const auto& alg = a.ambient->algebra();
  const CVec a1 = a.matrix.apply(alg.unit);
  // d = <1, A(1)> / <1, 1>
  const Complex num = a.ambient->inner(alg.unit, a1);
  const Complex den = a.ambient->inner(alg.unit, alg.unit);
  RegularityReport rep;
  rep.degree = (num / den).real();
  rep.residual = max_abs_diff(a1, scale(Complex(rep.degree, 0.0), alg.unit));
  return rep;
}

ClassicalDigraph ClassicalDigraph::empty(std::vector<std::string> vertices) {
  ClassicalDigraph dg;
  dg.vertices = std::move(vertices);
  dg.adj.assign(dg.vertices.size(), std::vector<int>(dg.vertices.size(), 0));
  return dg;
}

std::size_t ClassicalDigraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : adj)
    for (const int v : row) n += static_cast<std::size_t>(v);
  return n;
}

std::size_t ClassicalDigraph::vertex_index(const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return i;
  throw Error("unknown vertex label: " + label);
}

Matrix ClassicalDigraph::adjacency_map() const {
  Matrix m(size(), size());
  for (std::size_t s = 0; s < size(); ++s)
    for (std::size_t t = 0; t < size(); ++t)
      if (adj[s][t]) m.at(t, s) = Complex(1.0, 0.0);
  return m;
}

QuantumAdjacency classical_to_quantum(const ClassicalDigraph& dg, double tol) {
  return verify_quantum_adjacency(make_classical_set(dg.size(), tol),
                                  dg.adjacency_map(), tol);
}

ClassicalDigraph quantum_to_classical(const QuantumAdjacency& a, double tol) {
  if (!is_classical_set(*a.ambient, tol))
    throw Error("not classical: ambient quantum set is not (C^n, psi_n)");
  const std::size_t n = a.ambient->dim();
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < n; ++v) labels.push_back("v" + std::to_string(v));
  ClassicalDigraph dg = ClassicalDigraph::empty(labels);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Complex x = a.matrix.at(r, c);
      const int rounded = std::abs(x - Complex(1.0, 0.0)) < 0.5 ? 1 : 0;
      if (std::abs(x - Complex(static_cast<double>(rounded), 0.0)) > tol / 2)
        throw Error("not classical: adjacency entry is not 0/1");
      if (rounded) dg.adj[c][r] = 1;  // column = source
    }
  }
  return dg;
}

namespace {

std::vector<int> color_signature_pass(const ClassicalDigraph& g,
                                      const std::vector<int>& color,
                                      std::map<std::vector<int>, int>& palette) {
  const std::size_t n = g.size();
  std::vector<int> next(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<int> sig{color[v]};
    std::vector<int> outs, ins;
    for (std::size_t w = 0; w < n; ++w) {
      if (g.adj[v][w]) outs.push_back(color[w]);
      if (g.adj[w][v]) ins.push_back(color[w]);
    }
    std::sort(outs.begin(), outs.end());
    std::sort(ins.begin(), ins.end());
    sig.push_back(-1);
    sig.insert(sig.end(), outs.begin(), outs.end());
    sig.push_back(-2);
    sig.insert(sig.end(), ins.begin(), ins.end());
    auto [it, _] = palette.try_emplace(sig, static_cast<int>(palette.size()));
    next[v] = it->second;
  }
  return next;
}

// Iterated neighborhood color refinement, run on both graphs with a shared
// palette so that colors are comparable across them.
std::pair<std::vector<int>, std::vector<int>> refine_colors(
    const ClassicalDigraph& g1, const ClassicalDigraph& g2) {
  std::vector<int> c1(g1.size(), 0), c2(g2.size(), 0);
  for (std::size_t round = 0; round < g1.size(); ++round) {
    std::map<std::vector<int>, int> palette;
    std::vector<int> n1 = color_signature_pass(g1, c1, palette);
    std::vector<int> n2 = color_signature_pass(g2, c2, palette);
    if (n1 == c1 && n2 == c2) break;
    c1 = std::move(n1);
    c2 = std::move(n2);
  }
  return {c1, c2};
}

bool extend_mapping(const ClassicalDigraph& d1, const ClassicalDigraph& d2,
                    const std::vector<int>& c1, const std::vector<int>& c2,
                    const std::vector<std::size_t>& order, std::size_t k,
                    std::vector<std::size_t>& image,
                    std::vector<bool>& used) {
  if (k == order.size()) return true;
  const std::size_t v = order[k];
  for (std::size_t w = 0; w < d2.size(); ++w) {
    if (used[w] || c1[v] != c2[w]) continue;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      const std::size_t u = order[j];
      if (d1.adj[v][u] != d2.adj[w][image[u]]) ok = false;
      if (d1.adj[u][v] != d2.adj[image[u]][w]) ok = false;
    }
    if (d1.adj[v][v] != d2.adj[w][w]) ok = false;
    if (!ok) continue;
    image[v] = w;
    used[w] = true;
    if (extend_mapping(d1, d2, c1, c2, order, k + 1, image, used)) return true;
    used[w] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> digraph_isomorphic(
    const ClassicalDigraph& d1, const ClassicalDigraph& d2) {
  if (d1.size() > 16 || d2.size() > 16)
    throw Error("digraph isomorphism: more than 16 vertices");
  if (d1.size() != d2.size() || d1.edge_count() != d2.edge_count())
    return std::nullopt;
  const auto [c1, c2] = refine_colors(d1, d2);
  std::vector<int> h1 = c1, h2 = c2;
  std::sort(h1.begin(), h1.end());
  std::sort(h2.begin(), h2.end());
  if (h1 != h2) return std::nullopt;

  // Assign rare colors first.
  std::map<int, int> color_count;
  for (const int c : c1) ++color_count[c];
  std::vector<std::size_t> order(d1.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (color_count[c1[a]] != color_count[c1[b]])
      return color_count[c1[a]] < color_count[c1[b]];
    return a < b;
  });

  std::vector<std::size_t> image(d1.size(), 0);
  std::vector<bool> used(d2.size(), false);
  if (extend_mapping(d1, d2, c1, c2, order, 0, image, used)) return image;
  return std::nullopt;
}

}  // namespace qvolt
