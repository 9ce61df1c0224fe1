// SPDX-License-Identifier: Apache-2.0
#include "qvolt/qiso.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qvolt {

Matrix QuantumIsomorphismCertificate::p_matrix() const {
  const std::size_t n = hilbert_dim;
  const std::size_t ds = source->dim();
  const std::size_t dt = target->dim();
  Matrix p(n * dt, n * ds);
  for (std::size_t zeta = 0; zeta < n; ++zeta)
    for (std::size_t xi = 0; xi < n; ++xi)
      for (std::size_t r = 0; r < dt; ++r)
        for (std::size_t c = 0; c < ds; ++c)
          p.at(zeta * dt + r, xi * ds + c) = rho[zeta][xi].at(r, c);
  return p;
}

QuantumIsomorphismCertificate canonical_rho(const VoltageQuantumGraph& vqg,
                                            double tol) {
  const CheckReport vqg_report = verify_voltage_quantum_graph(vqg, tol);
  if (!vqg_report.pass(tol))
    throw Error("canonical rho: voltage quantum graph validation failed");

  QuantumIsomorphismCertificate cert;
  cert.target = crossed_product(vqg.base, vqg.action, tol);
  cert.source =
      crossed_product(vqg.base, trivial_dual_action(vqg.base, vqg.group), tol);
  const auto& group = vqg.group;
  const std::size_t n = group.order();
  const std::size_t db = vqg.base->dim();
  const std::size_t dim = cert.target->dim();
  cert.hilbert_dim = n;
  const auto characters = group.enumerate_dual();
  auto chi_mul = [&](std::size_t a, std::size_t b) {
    return group.index_of(group.multiply(characters[a], characters[b]));
  };
  auto chi_inv = [&](std::size_t a) {
    return group.index_of(group.inverse(characters[a]));
  };

  // rho(b (x) u~_chi) = sum_zeta alpha_zeta(b) u_chi (x) E_{zeta, chi^{-1} zeta}
  cert.rho.assign(n, std::vector<Matrix>(n, Matrix(dim, dim)));
  for (std::size_t zeta = 0; zeta < n; ++zeta) {
    for (std::size_t chi = 0; chi < n; ++chi) {
      const std::size_t eta = chi_mul(chi_inv(chi), zeta);
      Matrix& block = cert.rho[zeta][eta];
      const Matrix& a_zeta = vqg.action.maps[zeta];
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t k = 0; k < db; ++k)
          block.at(cert.target->index(chi, k), cert.source->index(chi, i)) =
              a_zeta.at(k, i);
    }
  }

  const auto& src = *cert.source->qset;
  const auto& tgt = *cert.target->qset;
  CheckReport& rep = cert.report;

  double hom = 0.0;
  double comult_compat = 0.0;
  for (std::size_t zeta = 0; zeta < n; ++zeta) {
    for (std::size_t eta = 0; eta < n; ++eta) {
      Matrix lhs(dim, dim * dim);
      Matrix lhs_comult(dim * dim, dim);
      for (std::size_t kappa = 0; kappa < n; ++kappa) {
        const Matrix kr =
            Matrix::kron(cert.rho[zeta][kappa], cert.rho[kappa][eta]);
        lhs = lhs + tgt.mult() * kr;
        lhs_comult = lhs_comult + kr * src.comult();
      }
      hom = std::max(hom,
                     max_abs_diff(lhs, cert.rho[zeta][eta] * src.mult()));
      comult_compat = std::max(
          comult_compat,
          max_abs_diff(lhs_comult, tgt.comult() * cert.rho[zeta][eta]));
    }
  }
  rep.add("hom_multiplicative", hom);
  rep.add("comult_compat", comult_compat);

  double star_res = 0.0;
  for (std::size_t zeta = 0; zeta < n; ++zeta)
    for (std::size_t eta = 0; eta < n; ++eta)
      star_res = std::max(
          star_res,
          max_abs_diff(cert.rho[zeta][eta] * src.algebra().star,
                       tgt.algebra().star * cert.rho[eta][zeta].conj()));
  rep.add("hom_star", star_res);

  double unit_res = 0.0;
  for (std::size_t zeta = 0; zeta < n; ++zeta)
    for (std::size_t eta = 0; eta < n; ++eta) {
      const CVec img = cert.rho[zeta][eta].apply(src.algebra().unit);
      const CVec want = zeta == eta ? tgt.algebra().unit
                                    : CVec(dim, Complex(0.0, 0.0));
      unit_res = std::max(unit_res, max_abs_diff(img, want));
    }
  rep.add("hom_unit", unit_res);

  double psi_res = 0.0;
  for (std::size_t zeta = 0; zeta < n; ++zeta)
    for (std::size_t eta = 0; eta < n; ++eta)
      for (std::size_t c = 0; c < dim; ++c) {
        const Complex val =
            tgt.algebra().psi_of(cert.rho[zeta][eta].column(c));
        const Complex want =
            zeta == eta ? src.algebra().psi[c] : Complex(0.0, 0.0);
        psi_res = std::max(psi_res, std::abs(val - want));
      }
  rep.add("psi_compat", psi_res);

  // Unitarity of p with respect to the GNS inner products (the Hilbert
  // space H = L^2(G) carries Gram n*Id, which cancels in the adjoint).
  const Matrix p = cert.p_matrix();
  const Matrix p_adj = Matrix::kron(Matrix::identity(n), src.gram_inverse()) *
                       p.dagger() *
                       Matrix::kron(Matrix::identity(n), tgt.gram());
  rep.add("p_unitary_right",
          max_abs_diff(p * p_adj, Matrix::identity(n * dim)));
  rep.add("p_unitary_left",
          max_abs_diff(p_adj * p, Matrix::identity(n * dim)));

  // Closed form p(c (x) u~_alpha (x) e_beta) = u_{alpha beta} c u_beta^*
  // (x) e_{alpha beta}.
  double p_formula = 0.0;
  for (std::size_t alpha = 0; alpha < n; ++alpha)
    for (std::size_t beta = 0; beta < n; ++beta) {
      const std::size_t ab = chi_mul(alpha, beta);
      const Matrix& map = vqg.action.maps[ab];
      for (std::size_t i = 0; i < db; ++i) {
        const CVec got =
            p.column(beta * dim + cert.source->index(alpha, i));
        CVec want(n * dim, Complex(0.0, 0.0));
        const CVec img = map.column(i);
        for (std::size_t k = 0; k < db; ++k)
          want[ab * dim + cert.target->index(alpha, k)] = img[k];
        p_formula = std::max(p_formula, max_abs_diff(got, want));
      }
    }
  rep.add("p_formula", p_formula);

  // Closed form p^dagger(b u_chi (x) e_xi) = alpha_{xi^{-1}}(b) (x) u~_chi
  // (x) e_{chi^{-1} xi}.
  double p_adj_formula = 0.0;
  for (std::size_t chi = 0; chi < n; ++chi)
    for (std::size_t xi = 0; xi < n; ++xi) {
      const std::size_t slot = chi_mul(chi_inv(chi), xi);
      const Matrix& map = vqg.action.maps[chi_inv(xi)];
      for (std::size_t i = 0; i < db; ++i) {
        const CVec got = p_adj.column(xi * dim + cert.target->index(chi, i));
        CVec want(n * dim, Complex(0.0, 0.0));
        const CVec img = map.column(i);
        for (std::size_t k = 0; k < db; ++k)
          want[slot * dim + cert.source->index(chi, k)] = img[k];
        p_adj_formula = std::max(p_adj_formula, max_abs_diff(got, want));
      }
    }
  rep.add("p_adjoint_formula", p_adj_formula);

  if (!rep.pass(tol)) {
    std::ostringstream os;
    os << "canonical rho: certificate residuals too large, max "
       << rep.max_residual();
    throw Error(os.str());
  }
  return cert;
}

double verify_graph_intertwining(const QuantumIsomorphismCertificate& cert,
                                 const Matrix& a_crossed,
                                 const Matrix& a_tensor) {
  const std::size_t dim = cert.target->dim();
  if (a_crossed.rows() != dim || a_crossed.cols() != dim ||
      a_tensor.rows() != cert.source->dim() ||
      a_tensor.cols() != cert.source->dim())
    throw Error("intertwining: adjacency shape mismatch");
  double res = 0.0;
  for (std::size_t zeta = 0; zeta < cert.hilbert_dim; ++zeta)
    for (std::size_t eta = 0; eta < cert.hilbert_dim; ++eta)
      res = std::max(res, max_abs_diff(a_crossed * cert.rho[zeta][eta],
                                       cert.rho[zeta][eta] * a_tensor));
  return res;
}

DerivedPair certify_derived_pair(const VoltageQuantumGraph& vqg, double tol) {
  DerivedPair out{derived_quantum_graph(vqg, tol),
                  derived_quantum_graph(
                      VoltageQuantumGraph{
                          vqg.base, vqg.group,
                          trivial_dual_action(vqg.base, vqg.group),
                          vqg.components},
                      tol),
                  canonical_rho(vqg, tol), 0.0};
  out.intertwining_residual = verify_graph_intertwining(
      out.certificate, out.crossed.adjacency.matrix,
      out.tensor.adjacency.matrix);
  return out;
}

namespace {

void validate_group_action(const ClassicalDigraph& gamma,
                           const FiniteAbelianGroup& group,
                           const std::vector<std::vector<std::size_t>>& action,
                           bool require_free) {
  const std::size_t nv = gamma.size();
  const std::size_t n = group.order();
  if (action.size() != n)
    throw Error("group action: one permutation per group element required");
  for (const auto& perm : action) {
    if (perm.size() != nv)
      throw Error("group action: permutation has wrong length");
    std::vector<bool> hit(nv, false);
    for (const std::size_t w : perm) {
      if (w >= nv || hit[w]) throw Error("group action: not a permutation");
      hit[w] = true;
    }
  }
  const auto elements = group.enumerate();
  for (std::size_t v = 0; v < nv; ++v)
    if (action[0][v] != v)
      throw Error("group action: identity element must act trivially");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab =
          group.index_of(group.multiply(elements[a], elements[b]));
      for (std::size_t v = 0; v < nv; ++v)
        if (action[a][action[b][v]] != action[ab][v])
          throw Error("group action: permutations do not compose as the group");
    }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t s = 0; s < nv; ++s)
      for (std::size_t t = 0; t < nv; ++t)
        if (gamma.adj[s][t] != gamma.adj[action[a][s]][action[a][t]]) {
          std::ostringstream os;
          os << "group action: element " << group.to_string(elements[a])
             << " does not preserve edge " << gamma.vertices[s] << " -> "
             << gamma.vertices[t];
          throw Error(os.str());
        }
    if (require_free && a != 0) {
      for (std::size_t v = 0; v < nv; ++v)
        if (action[a][v] == v) {
          std::ostringstream os;
          os << "group action is not free: element "
             << group.to_string(elements[a]) << " fixes vertex "
             << gamma.vertices[v];
          throw Error(os.str());
        }
    }
  }
}

}  // namespace

QuotientResult quotient_voltage_graph(
    const ClassicalDigraph& gamma, const FiniteAbelianGroup& group,
    const std::vector<std::vector<std::size_t>>& action) {
  validate_group_action(gamma, group, action, /*require_free=*/true);
  const std::size_t nv = gamma.size();
  const std::size_t n = group.order();
  if (nv % n != 0)
    throw Error("quotient: vertex count not divisible by the group order");

  // Orbits with lexicographically smallest vertex label as representative.
  std::vector<std::size_t> orbit_of(nv, nv);
  std::vector<std::size_t> reps;
  std::vector<std::size_t> group_part(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (orbit_of[v] != nv) continue;
    std::size_t rep = v;
    for (std::size_t a = 0; a < n; ++a)
      if (gamma.vertices[action[a][v]] < gamma.vertices[rep])
        rep = action[a][v];
    const std::size_t orbit_index = reps.size();
    reps.push_back(rep);
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t w = action[a][rep];
      if (orbit_of[w] != nv)
        throw Error("quotient: orbits overlap (action is not free)");
      orbit_of[w] = orbit_index;
      group_part[w] = a;
    }
  }

  QuotientResult out{
      ClassicalVoltageGraph{{}, group, {}},
      std::vector<std::size_t>(reps.size() * n, 0)};
  for (const std::size_t rep : reps)
    out.quotient.vertices.push_back(gamma.vertices[rep]);
  for (std::size_t o = 0; o < reps.size(); ++o)
    for (std::size_t a = 0; a < n; ++a)
      out.derived_to_input[o * n + a] = action[a][reps[o]];

  const auto elements = group.enumerate();
  for (std::size_t s = 0; s < nv; ++s) {
    if (group_part[s] != 0) continue;  // one edge per orbit: source at rep
    for (std::size_t t = 0; t < nv; ++t) {
      if (!gamma.adj[s][t]) continue;
      out.quotient.edges.push_back(LabeledEdge{
          orbit_of[s], orbit_of[t], elements[group_part[t]]});
    }
  }

  // The derived graph of the quotient must reproduce the input exactly.
  const ClassicalDigraph derived = classical_derived_graph(out.quotient);
  for (std::size_t a = 0; a < derived.size(); ++a)
    for (std::size_t b = 0; b < derived.size(); ++b)
      if (derived.adj[a][b] != gamma.adj[out.derived_to_input[a]]
                                        [out.derived_to_input[b]])
        throw Error("quotient: derived graph does not reproduce the input");
  return out;
}

Matrix classical_crossed_identification(const CrossedProductQuantumSet& cp) {
  if (!is_classical_set(*cp.base, cp.base->tol()))
    throw Error("classical identification: base is not classical");
  for (const auto& m : cp.action.maps)
    if (max_abs_diff(m, Matrix::identity(cp.base_dim())) > cp.base->tol())
      throw Error("classical identification: action is not trivial");
  const std::size_t nv = cp.base_dim();
  const std::size_t n = cp.group_order();
  const auto& group = cp.action.group;
  const auto elements = group.enumerate();
  const auto characters = group.enumerate_dual();
  Matrix l(nv * n, nv * n);
  for (std::size_t chi = 0; chi < n; ++chi)
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t g = 0; g < n; ++g)
        l.at(v * n + g, cp.index(chi, v)) =
            pairing(group, characters[chi], elements[g]);
  return l;
}

TwinResult quantum_twin(
    const ClassicalDigraph& gamma, const FiniteAbelianGroup& group,
    const std::vector<std::vector<std::size_t>>& free_action,
    const std::vector<std::vector<std::size_t>>& dual_action, double tol) {
  TwinResult out{quotient_voltage_graph(gamma, group, free_action), {}, 0.0};
  const auto& quotient = out.quotient.quotient;
  const std::size_t nq = quotient.vertices.size();
  const std::size_t n = group.order();

  // The dual action must preserve every g-labeled edge set of the quotient.
  if (dual_action.size() != n)
    throw Error("twin: one dual permutation per character required");
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  for (const auto& e : quotient.edges)
    edges.insert({e.src, e.dst, group.index_of(e.label)});
  const auto characters = group.enumerate_dual();
  for (std::size_t c = 0; c < n; ++c) {
    const auto& perm = dual_action[c];
    if (perm.size() != nq)
      throw Error("twin: dual permutation has wrong length");
    for (const auto& [s, t, g] : edges) {
      if (!edges.count({perm[s], perm[t], g})) {
        std::ostringstream os;
        os << "twin: dual action of character " << group.to_string(characters[c])
           << " does not preserve the " << group.to_string(group.element_at(g))
           << "-labeled edge set";
        throw Error(os.str());
      }
    }
  }

  QuantumSetPtr base = make_classical_set(nq, tol);
  DualAction action = permutation_dual_action(base, group, dual_action);
  std::vector<Matrix> components(n, Matrix(nq, nq));
  for (const auto& e : quotient.edges)
    components[group.index_of(e.label)].at(e.dst, e.src) = Complex(1.0, 0.0);
  const VoltageQuantumGraph vqg = make_voltage_quantum_graph(
      base, group, std::move(action), std::move(components), tol);
  out.pair = certify_derived_pair(vqg, tol);

  // Transport the tensor-side derived graph to the input coordinates.
  const Matrix ident =
      classical_crossed_identification(*out.pair.tensor.crossed);
  const Matrix in_vg_coords =
      ident * out.pair.tensor.adjacency.matrix * inverse(ident);
  Matrix relabel(gamma.size(), gamma.size());
  for (std::size_t k = 0; k < out.quotient.derived_to_input.size(); ++k)
    relabel.at(out.quotient.derived_to_input[k], k) = Complex(1.0, 0.0);
  const Matrix in_input_coords =
      relabel * in_vg_coords * relabel.transpose();
  out.classical_match_residual =
      max_abs_diff(in_input_coords, gamma.adjacency_map());
  return out;
}

std::vector<std::vector<std::vector<std::size_t>>> enumerate_dual_actions(
    const ClassicalVoltageGraph& cvg) {
  const std::size_t nv = cvg.vertices.size();
  if (nv > 8)
    throw Error("dual action search: more than 8 vertices");
  if (cvg.group.factor_count() != 1)
    throw Error("dual action search: only cyclic groups supported");
  const std::size_t n = cvg.group.order();

  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  for (const auto& e : cvg.edges)
    edges.insert({e.src, e.dst, cvg.group.index_of(e.label)});
  auto preserves = [&](const std::vector<std::size_t>& perm) {
    for (const auto& [s, t, g] : edges)
      if (!edges.count({perm[s], perm[t], g})) return false;
    return true;
  };

  // Label-preserving automorphisms of the voltage graph.
  std::vector<std::vector<std::size_t>> autos;
  std::vector<std::size_t> perm(nv);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    if (preserves(perm)) autos.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // A dual action of a cyclic group is a single automorphism whose order
  // divides n; powers give the permutation per character.
  std::vector<std::vector<std::vector<std::size_t>>> out;
  for (const auto& a : autos) {
    std::vector<std::vector<std::size_t>> table;
    std::vector<std::size_t> id(nv);
    std::iota(id.begin(), id.end(), std::size_t{0});
    table.push_back(id);
    std::vector<std::size_t> cur = id;
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<std::size_t> next(nv);
      for (std::size_t v = 0; v < nv; ++v) next[v] = a[cur[v]];
      table.push_back(next);
      cur = next;
    }
    std::vector<std::size_t> wrap(nv);
    for (std::size_t v = 0; v < nv; ++v) wrap[v] = a[cur[v]];
    if (wrap == id) out.push_back(table);
  }
  return out;
}

}  // namespace qvolt
