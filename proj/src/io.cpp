// SPDX-License-Identifier: Apache-2.0
#include "qvolt/io.hpp"

#include <fstream>
#include <sstream>

namespace qvolt::io {

namespace {

[[noreturn]] void schema_error(const std::string& context,
                               const std::string& what) {
  throw Error("schema error at " + context + ": " + what);
}

const json& require(const json& j, const char* key, const char* context) {
  if (!j.is_object() || !j.contains(key))
    schema_error(context, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_error("complex number", "expected [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json vector_to_json(const CVec& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

CVec vector_from_json(const json& j) {
  if (!j.is_array()) schema_error("vector", "expected an array");
  CVec out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) schema_error("matrix", "expected rows");
  std::vector<CVec> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) schema_error("matrix", "ragged rows");
  return Matrix::from_rows(rows);
}

json group_to_json(const FiniteAbelianGroup& g) {
  return json{{"cyclic_orders", g.cyclic_orders()}};
}

FiniteAbelianGroup group_from_json(const json& j) {
  const json& orders = require(j, "cyclic_orders", "group");
  if (!orders.is_array() || orders.empty())
    schema_error("group.cyclic_orders", "expected a nonempty array");
  std::vector<std::int64_t> vals;
  for (const auto& o : orders) {
    if (!o.is_number_integer() || o.get<std::int64_t>() < 1)
      schema_error("group.cyclic_orders", "orders must be positive integers");
    vals.push_back(o.get<std::int64_t>());
  }
  return FiniteAbelianGroup(vals);
}

GroupElement element_from_json(const json& j) {
  if (!j.is_array()) schema_error("group element", "expected an integer array");
  GroupElement g;
  for (const auto& r : j) {
    if (!r.is_number_integer())
      schema_error("group element", "expected integers");
    g.residues.push_back(r.get<std::int64_t>());
  }
  return g;
}

json element_to_json(const GroupElement& g) { return json(g.residues); }

QuantumSetPtr qset_from_json(const json& j, double tol) {
  const std::string kind = require(j, "kind", "qset").get<std::string>();
  if (kind == "classical") {
    const auto size = require(j, "size", "qset").get<std::int64_t>();
    if (size < 1) schema_error("qset.size", "must be positive");
    return make_classical_set(static_cast<std::size_t>(size), tol);
  }
  if (kind == "tracial_blocks") {
    const json& blocks = require(j, "blocks", "qset");
    std::vector<std::size_t> sizes;
    for (const auto& b : blocks) {
      if (!b.is_number_integer() || b.get<std::int64_t>() < 1)
        schema_error("qset.blocks", "block sizes must be positive integers");
      sizes.push_back(b.get<std::size_t>());
    }
    return make_tracial_blocks_set(sizes, tol);
  }
  if (kind == "structure_constants") {
    const auto dim = require(j, "dim", "qset").get<std::int64_t>();
    if (dim < 1) schema_error("qset.dim", "must be positive");
    const std::size_t d = static_cast<std::size_t>(dim);
    StarAlgebra alg;
    alg.dim = d;
    const json& mult = require(j, "mult", "qset");
    if (!mult.is_array() || mult.size() != d)
      schema_error("qset.mult", "expected a d x d x d complex tensor");
    alg.mult = Matrix(d, d * d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!mult[i].is_array() || mult[i].size() != d)
        schema_error("qset.mult", "expected a d x d x d complex tensor");
      for (std::size_t jj = 0; jj < d; ++jj) {
        const CVec coeffs = vector_from_json(mult[i][jj]);
        if (coeffs.size() != d)
          schema_error("qset.mult", "expected a d x d x d complex tensor");
        for (std::size_t k = 0; k < d; ++k)
          alg.mult.at(k, i * d + jj) = coeffs[k];
      }
    }
    alg.star = matrix_from_json(require(j, "star", "qset"));
    if (alg.star.rows() != d || alg.star.cols() != d)
      schema_error("qset.star", "expected a d x d matrix");
    alg.unit = vector_from_json(require(j, "unit", "qset"));
    alg.psi = vector_from_json(require(j, "psi", "qset"));
    if (alg.unit.size() != d || alg.psi.size() != d)
      schema_error("qset", "unit and psi must have length d");
    for (std::size_t i = 0; i < d; ++i)
      alg.basis_labels.push_back("b" + std::to_string(i));
    return std::make_shared<const QuantumSet>(QuantumSet::create(alg, tol));
  }
  schema_error("qset.kind", "unknown kind \"" + kind + "\"");
}

ClassicalDigraph digraph_from_json(const json& j) {
  const json& vertices = require(j, "vertices", "digraph");
  std::vector<std::string> labels;
  for (const auto& v : vertices) {
    if (!v.is_string()) schema_error("digraph.vertices", "expected strings");
    labels.push_back(v.get<std::string>());
  }
  if (labels.empty()) schema_error("digraph.vertices", "expected at least one");
  ClassicalDigraph dg = ClassicalDigraph::empty(labels);
  const json& edges = require(j, "edges", "digraph");
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2)
      schema_error("digraph.edges", "expected [src, dst] pairs");
    dg.add_edge(dg.vertex_index(e[0].get<std::string>()),
                dg.vertex_index(e[1].get<std::string>()));
  }
  return dg;
}

json digraph_to_json(const ClassicalDigraph& dg) {
  json edges = json::array();
  for (std::size_t s = 0; s < dg.size(); ++s)
    for (std::size_t t = 0; t < dg.size(); ++t)
      if (dg.adj[s][t])
        edges.push_back(json::array({dg.vertices[s], dg.vertices[t]}));
  return json{{"vertices", dg.vertices}, {"edges", edges}};
}

std::string digraph_to_dot(const ClassicalDigraph& dg) {
  std::ostringstream os;
  os << "digraph {\n";
  for (const auto& v : dg.vertices) os << "  \"" << v << "\";\n";
  for (std::size_t s = 0; s < dg.size(); ++s)
    for (std::size_t t = 0; t < dg.size(); ++t)
      if (dg.adj[s][t])
        os << "  \"" << dg.vertices[s] << "\" -> \"" << dg.vertices[t]
           << "\";\n";
  os << "}\n";
  return os.str();
}

ClassicalVoltageGraph voltage_graph_from_json(const json& j) {
  const json& vertices = require(j, "vertices", "voltage graph");
  std::vector<std::string> labels;
  for (const auto& v : vertices) labels.push_back(v.get<std::string>());
  if (labels.empty())
    schema_error("voltage.vertices", "expected at least one vertex");
  ClassicalVoltageGraph cvg{labels,
                            group_from_json(require(j, "group", "voltage graph")),
                            {}};
  for (const auto& e : require(j, "edges", "voltage graph")) {
    const std::string src = require(e, "src", "voltage edge").get<std::string>();
    const std::string dst = require(e, "dst", "voltage edge").get<std::string>();
    GroupElement label = element_from_json(require(e, "label", "voltage edge"));
    if (label.residues.size() != cvg.group.factor_count())
      schema_error("voltage edge.label", "wrong factor shape");
    cvg.edges.push_back(LabeledEdge{cvg.vertex_index(src),
                                    cvg.vertex_index(dst),
                                    cvg.group.reduce(label)});
  }
  return cvg;
}

json voltage_graph_to_json(const ClassicalVoltageGraph& cvg) {
  json edges = json::array();
  for (const auto& e : cvg.edges)
    edges.push_back(json{{"src", cvg.vertices[e.src]},
                         {"dst", cvg.vertices[e.dst]},
                         {"label", e.label.residues}});
  return json{{"vertices", cvg.vertices},
              {"group", group_to_json(cvg.group)},
              {"edges", edges}};
}

std::string voltage_graph_to_dot(const ClassicalVoltageGraph& cvg) {
  std::ostringstream os;
  os << "digraph {\n";
  for (const auto& v : cvg.vertices) os << "  \"" << v << "\";\n";
  for (const auto& e : cvg.edges)
    os << "  \"" << cvg.vertices[e.src] << "\" -> \"" << cvg.vertices[e.dst]
       << "\" [label=\"" << cvg.group.to_string(e.label) << "\"];\n";
  os << "}\n";
  return os.str();
}

VoltageQuantumGraph vqg_from_json(const json& j, double tol) {
  QuantumSetPtr base = qset_from_json(require(j, "base", "vqg"), tol);
  const FiniteAbelianGroup group =
      group_from_json(require(j, "group", "vqg"));
  const json& action_json = require(j, "action", "vqg");
  const std::string kind =
      require(action_json, "kind", "vqg.action").get<std::string>();
  DualAction action{base, group, {}};
  if (kind == "trivial") {
    action = trivial_dual_action(base, group);
  } else if (kind == "matrices") {
    action.maps.assign(group.order(), Matrix());
    std::vector<bool> seen(group.order(), false);
    for (const auto& entry : require(action_json, "entries", "vqg.action")) {
      const GroupElement chi =
          element_from_json(require(entry, "character", "vqg.action.entry"));
      const std::size_t idx = group.index_of(chi);
      seen[idx] = true;
      action.maps[idx] =
          matrix_from_json(require(entry, "matrix", "vqg.action.entry"));
    }
    for (std::size_t c = 0; c < group.order(); ++c)
      if (!seen[c])
        schema_error("vqg.action.entries",
                     "missing matrix for character " +
                         group.to_string(group.element_at(c)));
  } else {
    schema_error("vqg.action.kind", "expected \"trivial\" or \"matrices\"");
  }

  std::vector<Matrix> components(group.order(),
                                 Matrix(base->dim(), base->dim()));
  for (const auto& entry : require(j, "components", "vqg")) {
    const GroupElement g =
        element_from_json(require(entry, "label", "vqg.component"));
    components[group.index_of(g)] =
        matrix_from_json(require(entry, "matrix", "vqg.component"));
  }
  return make_voltage_quantum_graph(base, group, std::move(action),
                                    std::move(components), tol);
}

namespace {

std::vector<std::size_t> perm_from_json(const json& j, std::size_t n,
                                        const char* context) {
  if (!j.is_array() || j.size() != n)
    schema_error(context, "expected a permutation array of length " +
                              std::to_string(n));
  std::vector<std::size_t> perm;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
        v.get<std::size_t>() >= n)
      schema_error(context, "entries must be vertex indices");
    perm.push_back(v.get<std::size_t>());
  }
  return perm;
}

/// Expands per-generator data to all group elements: the entry for g with
/// residues (r_1, ..., r_k) is the product of the j-th generator datum taken
/// r_j times.
template <typename T, typename Mul>
std::vector<T> expand_generators(const FiniteAbelianGroup& group,
                                 const std::vector<T>& generators,
                                 const T& identity, Mul mul) {
  if (generators.size() != group.factor_count())
    throw Error("expected one entry per cyclic generator");
  std::vector<T> out;
  for (const auto& g : group.enumerate()) {
    T acc = identity;
    for (std::size_t f = 0; f < group.factor_count(); ++f)
      for (std::int64_t r = 0; r < g.residues[f]; ++r)
        acc = mul(acc, generators[f]);
    out.push_back(acc);
  }
  return out;
}

}  // namespace

TwinInput twin_input_from_json(const json& j) {
  TwinInput in{digraph_from_json(require(j, "graph", "twin")),
               group_from_json(require(j, "group", "twin")),
               {},
               {}};
  const std::size_t nv = in.graph.size();

  const json& free_json = require(j, "free_action", "twin");
  std::vector<std::vector<std::size_t>> gens;
  for (const auto& p : free_json)
    gens.push_back(perm_from_json(p, nv, "twin.free_action"));
  std::vector<std::size_t> id(nv);
  for (std::size_t v = 0; v < nv; ++v) id[v] = v;
  in.free_action = expand_generators(
      in.group, gens, id,
      [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> c(a.size());
        for (std::size_t v = 0; v < a.size(); ++v) c[v] = a[b[v]];
        return c;
      });

  // One permutation per character; the quotient size is |V| / |G|.
  if (nv % in.group.order() != 0)
    schema_error("twin", "vertex count is not divisible by the group order");
  const std::size_t nq = nv / in.group.order();
  in.dual_action.assign(in.group.order(), {});
  std::vector<bool> seen(in.group.order(), false);
  for (const auto& entry : require(j, "dual_action", "twin")) {
    const GroupElement chi =
        element_from_json(require(entry, "character", "twin.dual_action"));
    const std::size_t idx = in.group.index_of(chi);
    seen[idx] = true;
    in.dual_action[idx] =
        perm_from_json(require(entry, "perm", "twin.dual_action"), nq,
                       "twin.dual_action.perm");
  }
  for (std::size_t c = 0; c < in.group.order(); ++c)
    if (!seen[c])
      schema_error("twin.dual_action",
                   "missing permutation for character " +
                       in.group.to_string(in.group.element_at(c)));
  return in;
}

GraphAction reconstruct_input_from_json(const json& j, double tol) {
  GraphAction ga;
  ga.qset = qset_from_json(require(j, "qset", "reconstruct"), tol);
  ga.group = group_from_json(require(j, "group", "reconstruct"));
  const Matrix adjacency =
      matrix_from_json(require(j, "adjacency", "reconstruct"));
  ga.target = verify_quantum_adjacency(ga.qset, adjacency, tol);

  std::vector<Matrix> gens;
  for (const auto& m : require(j, "alpha", "reconstruct"))
    gens.push_back(matrix_from_json(m));
  ga.alpha = expand_generators(ga.group, gens,
                               Matrix::identity(ga.qset->dim()),
                               [](const Matrix& a, const Matrix& b) {
                                 return a * b;
                               });

  ga.units.assign(ga.group.order(), CVec());
  std::vector<bool> seen(ga.group.order(), false);
  for (const auto& entry : require(j, "u", "reconstruct")) {
    const GroupElement chi =
        element_from_json(require(entry, "character", "reconstruct.u"));
    const std::size_t idx = ga.group.index_of(chi);
    seen[idx] = true;
    ga.units[idx] =
        vector_from_json(require(entry, "vector", "reconstruct.u"));
  }
  for (std::size_t c = 0; c < ga.group.order(); ++c)
    if (!seen[c])
      schema_error("reconstruct.u",
                   "missing u vector for character " +
                       ga.group.to_string(ga.group.element_at(c)));
  return ga;
}

json check_report_to_json(const CheckReport& report, double tol) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back(json{{"name", c.name},
                          {"residual", c.residual},
                          {"pass", c.residual < tol}});
  return checks;
}

std::string digest_of(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qvolt::io
