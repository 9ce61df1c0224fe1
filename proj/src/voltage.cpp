// SPDX-License-Identifier: Apache-2.0
#include "qvolt/voltage.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qvolt {

std::size_t ClassicalVoltageGraph::vertex_index(
    const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return i;
  throw Error("unknown vertex label: " + label);
}

namespace {

std::tuple<std::size_t, std::size_t, std::size_t> edge_key(
    const ClassicalVoltageGraph& cvg, const LabeledEdge& e) {
  return {e.src, e.dst, cvg.group.index_of(e.label)};
}

}  // namespace

PreSimpleReport is_pre_simple(const ClassicalVoltageGraph& cvg) {
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const auto& e : cvg.edges) {
    if (e.src >= cvg.vertices.size() || e.dst >= cvg.vertices.size())
      throw Error("voltage graph edge references an unknown vertex");
    if (!seen.insert(edge_key(cvg, e)).second)
      return {false, LabeledEdge{e.src, e.dst, cvg.group.reduce(e.label)}};
  }
  return {true, std::nullopt};
}

ClassicalVoltageGraph symmetrize(const ClassicalVoltageGraph& cvg) {
  ClassicalVoltageGraph out = cvg;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> present;
  for (const auto& e : cvg.edges) present.insert(edge_key(cvg, e));
  for (const auto& e : cvg.edges) {
    const LabeledEdge rev{e.dst, e.src, cvg.group.inverse(e.label)};
    if (present.insert(edge_key(cvg, rev)).second) out.edges.push_back(rev);
  }
  return out;
}

std::vector<std::string> derived_vertex_labels(
    const ClassicalVoltageGraph& cvg) {
  std::vector<std::string> labels;
  for (const auto& v : cvg.vertices)
    for (const auto& g : cvg.group.enumerate())
      labels.push_back(v + "@" + cvg.group.to_string(g));
  return labels;
}

std::vector<std::pair<std::size_t, std::size_t>> classical_derived_multigraph(
    const ClassicalVoltageGraph& cvg) {
  const std::size_t n = cvg.group.order();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : cvg.edges) {
    if (e.src >= cvg.vertices.size() || e.dst >= cvg.vertices.size())
      throw Error("voltage graph edge references an unknown vertex");
    for (std::size_t h = 0; h < n; ++h) {
      const auto hg =
          cvg.group.multiply(cvg.group.element_at(h), e.label);
      out.emplace_back(e.src * n + h, e.dst * n + cvg.group.index_of(hg));
    }
  }
  return out;
}

ClassicalDigraph classical_derived_graph(const ClassicalVoltageGraph& cvg) {
  const PreSimpleReport pre = is_pre_simple(cvg);
  if (!pre.pre_simple) {
    std::ostringstream os;
    os << "voltage graph is not pre-simple: duplicate edge "
       << cvg.vertices[pre.duplicate->src] << " -> "
       << cvg.vertices[pre.duplicate->dst] << " with label "
       << cvg.group.to_string(pre.duplicate->label);
    throw Error(os.str());
  }
  ClassicalDigraph dg = ClassicalDigraph::empty(derived_vertex_labels(cvg));
  for (const auto& [src, dst] : classical_derived_multigraph(cvg))
    dg.add_edge(src, dst);
  return dg;
}

DualAction trivial_dual_action(QuantumSetPtr base,
                               const FiniteAbelianGroup& group) {
  DualAction a{std::move(base), group, {}};
  a.maps.assign(group.order(), Matrix::identity(a.base->dim()));
  return a;
}

DualAction permutation_dual_action(
    QuantumSetPtr base, const FiniteAbelianGroup& group,
    const std::vector<std::vector<std::size_t>>& perms) {
  if (!base || !is_classical_set(*base, base->tol()))
    throw Error("permutation dual action: base is not a classical set");
  if (perms.size() != group.order())
    throw Error("permutation dual action: one permutation per character required");
  DualAction a{std::move(base), group, {}};
  const std::size_t d = a.base->dim();
  for (const auto& p : perms) {
    if (p.size() != d)
      throw Error("permutation dual action: permutation has wrong length");
    Matrix m(d, d);
    std::vector<bool> hit(d, false);
    for (std::size_t v = 0; v < d; ++v) {
      if (p[v] >= d || hit[p[v]])
        throw Error("permutation dual action: not a permutation");
      hit[p[v]] = true;
      m.at(p[v], v) = Complex(1.0, 0.0);
    }
    a.maps.push_back(std::move(m));
  }
  return a;
}

CheckReport verify_dual_action(const DualAction& action, double tol) {
  (void)tol;
  if (!action.base) throw Error("dual action: missing base");
  const auto& qs = *action.base;
  const auto& alg = qs.algebra();
  const std::size_t n = action.group.order();
  if (action.maps.size() != n)
    throw Error("dual action: one map per character required");
  CheckReport rep;

  double automorphism = 0.0;
  double psi_invariant = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const Matrix& m = action.maps[c];
    if (m.rows() != qs.dim() || m.cols() != qs.dim())
      throw Error("dual action: map has wrong shape");
    automorphism = std::max(
        automorphism,
        max_abs_diff(m * alg.mult, alg.mult * Matrix::kron(m, m)));
    automorphism = std::max(
        automorphism, max_abs_diff(m * alg.star, alg.star * m.conj()));
    automorphism =
        std::max(automorphism, max_abs_diff(m.apply(alg.unit), alg.unit));
    double psi_res = 0.0;
    for (std::size_t i = 0; i < qs.dim(); ++i)
      psi_res = std::max(
          psi_res, std::abs(alg.psi_of(m.column(i)) - alg.psi[i]));
    psi_invariant = std::max(psi_invariant, psi_res);
  }
  rep.add("automorphism", automorphism);
  rep.add("psi_invariant", psi_invariant);

  rep.add("identity_at_trivial",
          max_abs_diff(action.maps[0], Matrix::identity(qs.dim())));
  double hom = 0.0;
  const auto characters = action.group.enumerate_dual();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab =
          action.group.index_of(action.group.multiply(characters[a],
                                                      characters[b]));
      hom = std::max(hom, max_abs_diff(action.maps[a] * action.maps[b],
                                       action.maps[ab]));
    }
  }
  rep.add("homomorphism", hom);
  return rep;
}

CheckReport verify_voltage_quantum_graph(const VoltageQuantumGraph& vqg,
                                         double tol) {
  if (!vqg.base) throw Error("voltage quantum graph: missing base");
  if (vqg.components.size() != vqg.group.order())
    throw Error("voltage quantum graph: one component per group element required");
  if (vqg.action.base != vqg.base || !(vqg.action.group == vqg.group))
    throw Error("voltage quantum graph: action does not match base and group");
  CheckReport rep;
  rep.merge(verify_dual_action(vqg.action, tol), "action.");
  double adjacency = 0.0;
  for (const auto& a : vqg.components) {
    const AdjacencyCheck c = check_quantum_adjacency(*vqg.base, a);
    adjacency = std::max(adjacency, std::max(c.schur_residual, c.star_residual));
  }
  rep.add("components_adjacency", adjacency);
  double commutation = 0.0;
  for (const auto& a : vqg.components)
    for (const auto& m : vqg.action.maps)
      commutation = std::max(commutation, max_abs_diff(a * m, m * a));
  rep.add("action_commutation", commutation);
  return rep;
}

VoltageQuantumGraph make_voltage_quantum_graph(QuantumSetPtr base,
                                               const FiniteAbelianGroup& group,
                                               DualAction action,
                                               std::vector<Matrix> components,
                                               double tol) {
  VoltageQuantumGraph vqg{std::move(base), group, std::move(action),
                          std::move(components)};
  const CheckReport rep = verify_voltage_quantum_graph(vqg, tol);
  if (!rep.pass(tol)) {
    std::ostringstream os;
    os << "voltage quantum graph validation failed: max residual "
       << rep.max_residual();
    throw Error(os.str());
  }
  return vqg;
}

VoltageQuantumGraph classical_to_voltage_quantum(
    const ClassicalVoltageGraph& cvg, double tol) {
  const PreSimpleReport pre = is_pre_simple(cvg);
  if (!pre.pre_simple) {
    std::ostringstream os;
    os << "voltage graph is not pre-simple: duplicate edge "
       << cvg.vertices[pre.duplicate->src] << " -> "
       << cvg.vertices[pre.duplicate->dst] << " with label "
       << cvg.group.to_string(pre.duplicate->label);
    throw Error(os.str());
  }
  const std::size_t nv = cvg.vertices.size();
  QuantumSetPtr base = make_classical_set(nv, tol);
  std::vector<Matrix> components(cvg.group.order(), Matrix(nv, nv));
  for (const auto& e : cvg.edges)
    components[cvg.group.index_of(e.label)].at(e.dst, e.src) =
        Complex(1.0, 0.0);
  return make_voltage_quantum_graph(base, cvg.group,
                                    trivial_dual_action(base, cvg.group),
                                    std::move(components), tol);
}

}  // namespace qvolt
