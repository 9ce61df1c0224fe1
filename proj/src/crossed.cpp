// SPDX-License-Identifier: Apache-2.0
#include "qvolt/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qvolt {

CrossedProductPtr crossed_product(QuantumSetPtr base, const DualAction& action,
                                  double tol) {
  if (!base) throw Error("crossed product: missing base");
  if (action.base != base)
    throw Error("crossed product: action acts on a different quantum set");
  const CheckReport action_report = verify_dual_action(action, tol);
  if (!action_report.pass(tol)) {
    std::ostringstream os;
    os << "crossed product: dual action validation failed, max residual "
       << action_report.max_residual();
    throw Error(os.str());
  }

  const auto& balg = base->algebra();
  const std::size_t db = base->dim();
  const std::size_t n = action.group.order();
  const std::size_t dim = db * n;
  const auto characters = action.group.enumerate_dual();
  auto idx = [db](std::size_t chi, std::size_t i) { return chi * db + i; };

  StarAlgebra alg;
  alg.dim = dim;
  alg.mult = Matrix(dim, dim * dim);
  alg.star = Matrix(dim, dim);
  alg.unit = CVec(dim, Complex(0.0, 0.0));
  alg.psi = CVec(dim, Complex(0.0, 0.0));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < db; ++i)
      alg.basis_labels.push_back(balg.basis_labels[i] + ".u" +
                                 action.group.to_string(characters[c]));

  for (std::size_t c1 = 0; c1 < n; ++c1) {
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      const std::size_t c12 = action.group.index_of(
          action.group.multiply(characters[c1], characters[c2]));
      for (std::size_t i = 0; i < db; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
          // (b_i u_c1)(b_j u_c2) = b_i alpha_{c1}(b_j) u_{c1 c2}
          const CVec prod =
              balg.multiply(unit_vec(db, i), action.maps[c1].column(j));
          const std::size_t col = idx(c1, i) * dim + idx(c2, j);
          for (std::size_t k = 0; k < db; ++k)
            alg.mult.at(idx(c12, k), col) = prod[k];
        }
      }
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t cinv = action.group.index_of(
        action.group.inverse(characters[c]));
    for (std::size_t i = 0; i < db; ++i) {
      // (b_i u_c)^* = alpha_{c^{-1}}(b_i^*) u_{c^{-1}}
      const CVec st = action.maps[cinv].apply(balg.star.column(i));
      for (std::size_t k = 0; k < db; ++k)
        alg.star.at(idx(cinv, k), idx(c, i)) = st[k];
    }
  }
  for (std::size_t i = 0; i < db; ++i) {
    alg.unit[idx(0, i)] = balg.unit[i];
    alg.psi[idx(0, i)] = Complex(static_cast<double>(n), 0.0) * balg.psi[i];
  }

  auto out = std::make_shared<CrossedProductQuantumSet>();
  out->qset = std::make_shared<const QuantumSet>(QuantumSet::create(alg, tol));
  out->base = base;
  out->action = action;
  for (std::size_t c = 0; c < n; ++c) {
    CVec uc(dim, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < db; ++i) uc[idx(c, i)] = balg.unit[i];
    out->u.push_back(std::move(uc));
  }
  out->expectation = Matrix(db, dim);
  out->expectation_adjoint = Matrix(dim, db);
  for (std::size_t i = 0; i < db; ++i) {
    out->expectation.at(i, idx(0, i)) = Complex(static_cast<double>(n), 0.0);
    out->expectation_adjoint.at(idx(0, i), i) = Complex(1.0, 0.0);
  }
  return out;
}

CheckReport crossed_product_structure_report(
    const CrossedProductQuantumSet& cp, double tol) {
  (void)tol;
  CheckReport rep;
  const auto& qs = *cp.qset;
  const auto& base = *cp.base;
  const std::size_t db = cp.base_dim();
  const std::size_t n = cp.group_order();
  const std::size_t dim = cp.dim();
  const auto& group = cp.action.group;
  const auto characters = group.enumerate_dual();

  // <b u_chi, c u_xi> = n delta_{chi=xi} <b, c>.
  const Matrix expected_gram =
      Matrix::kron(Matrix::identity(n), base.gram()) *
      Complex(static_cast<double>(n), 0.0);
  rep.add("inner_product_formula", max_abs_diff(qs.gram(), expected_gram));

  // u_chi form a unitary representation of the dual group.
  double urep = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab =
          group.index_of(group.multiply(characters[a], characters[b]));
      urep = std::max(urep, max_abs_diff(
                                 qs.algebra().multiply(cp.u[a], cp.u[b]),
                                 cp.u[ab]));
    }
    const std::size_t ainv =
        group.index_of(group.inverse(characters[a]));
    urep = std::max(urep,
                    max_abs_diff(qs.algebra().star_of(cp.u[a]), cp.u[ainv]));
    urep = std::max(
        urep, max_abs_diff(
                  qs.algebra().multiply(qs.algebra().star_of(cp.u[a]), cp.u[a]),
                  qs.algebra().unit));
  }
  rep.add("u_representation", urep);

  // m*(b u_chi) = (1/n) sum_xi sum_i b_i^(1) u_xi (x)
  //               alpha_{xi^{-1}}(b_i^(2)) u_{xi^{-1} chi}.
  double comult_res = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < db; ++i) {
      const CVec w = base.comult().column(i);  // index (p, q)
      CVec expected(dim * dim, Complex(0.0, 0.0));
      for (std::size_t xi = 0; xi < n; ++xi) {
        const std::size_t xi_inv =
            group.index_of(group.inverse(characters[xi]));
        const std::size_t xic = group.index_of(group.multiply(
            group.inverse(characters[xi]), characters[c]));
        for (std::size_t p = 0; p < db; ++p) {
          for (std::size_t q = 0; q < db; ++q) {
            const Complex coeff = w[p * db + q] /
                                  static_cast<double>(n);
            if (coeff == Complex(0.0, 0.0)) continue;
            const CVec aq = cp.action.maps[xi_inv].column(q);
            const std::size_t left = cp.index(xi, p);
            for (std::size_t k = 0; k < db; ++k)
              expected[left * dim + cp.index(xic, k)] += coeff * aq[k];
          }
        }
      }
      comult_res = std::max(
          comult_res,
          max_abs_diff(qs.comult().column(cp.index(c, i)), expected));
    }
  }
  rep.add("comultiplication_formula", comult_res);

  // E* computed as the GNS adjoint of E must be the inclusion of the base.
  const Matrix e_adj = adjoint_map_between(qs, base, cp.expectation);
  rep.add("expectation_adjoint_is_inclusion",
          max_abs_diff(e_adj, cp.expectation_adjoint));

  // psi(b u_chi) = n delta_{chi=1} psi~(b).
  CVec expected_psi(dim, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < db; ++i)
    expected_psi[cp.index(0, i)] =
        Complex(static_cast<double>(n), 0.0) * base.algebra().psi[i];
  rep.add("psi_formula", max_abs_diff(qs.algebra().psi, expected_psi));

  return rep;
}

Matrix x_map_matrix(const CrossedProductQuantumSet& cp, std::size_t g_index) {
  const std::size_t dim = cp.dim();
  const std::size_t n = cp.group_order();
  const auto& group = cp.action.group;
  const GroupElement g = group.element_at(g_index);
  const auto characters = group.enumerate_dual();
  Matrix x(dim, dim);
  for (std::size_t c = 0; c < n; ++c) {
    const Complex weight =
        std::conj(pairing(group, characters[c], g)) / static_cast<double>(n);
    // u_chi u_chi^dagger = u_chi (u_chi^H G .)
    const CVec gu = cp.qset->gram().apply(cp.u[c]);
    for (std::size_t r = 0; r < dim; ++r) {
      if (cp.u[c][r] == Complex(0.0, 0.0)) continue;
      for (std::size_t s = 0; s < dim; ++s)
        x.at(r, s) += weight * cp.u[c][r] * std::conj(gu[s]);
    }
  }
  return x;
}

QuantumAdjacency x_map(const CrossedProductPtr& cp, const GroupElement& g) {
  const std::size_t g_index = cp->action.group.index_of(g);
  return verify_quantum_adjacency(cp->qset, x_map_matrix(*cp, g_index),
                                  cp->qset->tol());
}

DerivedQuantumGraph derived_quantum_graph(const VoltageQuantumGraph& vqg,
                                          double tol) {
  const CheckReport vqg_report = verify_voltage_quantum_graph(vqg, tol);
  if (!vqg_report.pass(tol)) {
    std::ostringstream os;
    os << "derived quantum graph: voltage quantum graph validation failed, "
          "max residual "
       << vqg_report.max_residual();
    throw Error(os.str());
  }
  DerivedQuantumGraph out;
  out.crossed = crossed_product(vqg.base, vqg.action, tol);
  const auto& cp = *out.crossed;
  const auto& qs = *cp.qset;
  const std::size_t dim = cp.dim();
  const std::size_t db = cp.base_dim();
  const std::size_t n = cp.group_order();
  const auto& group = vqg.group;
  const auto elements = group.enumerate();
  const auto characters = group.enumerate_dual();

  Matrix total(dim, dim);
  double term_identity = 0.0;
  double term_swap = 0.0;
  for (std::size_t gi = 0; gi < n; ++gi) {
    const Matrix xg = x_map_matrix(cp, gi);
    const Matrix eae =
        cp.expectation_adjoint * vqg.components[gi] * cp.expectation;
    const Matrix term = schur_product_matrix(qs, xg, eae);
    // m(X_g (x) E* A~_g E)m* (b u_chi) = conj(chi(g)) A~_g(b) u_chi
    Matrix expected(dim, dim);
    for (std::size_t c = 0; c < n; ++c) {
      const Complex phase =
          std::conj(pairing(group, characters[c], elements[gi]));
      for (std::size_t i = 0; i < db; ++i) {
        const CVec img = vqg.components[gi].column(i);
        for (std::size_t k = 0; k < db; ++k)
          expected.at(cp.index(c, k), cp.index(c, i)) = phase * img[k];
      }
    }
    term_identity = std::max(term_identity, max_abs_diff(term, expected));
    term_swap = std::max(
        term_swap, max_abs_diff(term, schur_product_matrix(qs, eae, xg)));
    total = total + term;
  }
  out.report.add("term_formula", term_identity);
  out.report.add("term_swap_symmetry", term_swap);

  const AdjacencyCheck check = check_quantum_adjacency(qs, total);
  out.report.add("derived_schur_idempotent", check.schur_residual);
  out.report.add("derived_star_preserving", check.star_residual);
  out.adjacency =
      QuantumAdjacency{cp.qset, std::move(total), check.schur_residual,
                       check.star_residual};
  if (!out.report.pass(tol)) {
    std::ostringstream os;
    os << "derived quantum graph: structural identity failed, max residual "
       << out.report.max_residual();
    throw Error(os.str());
  }
  return out;
}

bool PropertyTransfer::consistent(double tol) const {
  if (voltage_loopfree < tol && !(derived_loopfree < tol)) return false;
  if (voltage_undirected < tol && !(derived_undirected < tol)) return false;
  if (voltage_regularity < tol &&
      !(derived_regularity < tol &&
        std::abs(voltage_degree - derived_degree) < tol))
    return false;
  return true;
}

PropertyTransfer property_transfer_report(const VoltageQuantumGraph& vqg,
                                          double tol) {
  PropertyTransfer out;
  const auto& base = *vqg.base;
  const std::size_t db = base.dim();
  const auto& group = vqg.group;

  // Hypotheses on the voltage side.
  out.voltage_loopfree =
      schur_product_matrix(base, vqg.components[0], Matrix::identity(db))
          .max_abs();
  for (std::size_t gi = 0; gi < group.order(); ++gi) {
    const std::size_t gi_inv =
        group.index_of(group.inverse(group.element_at(gi)));
    out.voltage_undirected = std::max(
        out.voltage_undirected,
        max_abs_diff(base.adjoint_map(vqg.components[gi]),
                     vqg.components[gi_inv]));
  }
  Matrix total(db, db);
  for (const auto& a : vqg.components) total = total + a;
  const CVec t1 = total.apply(base.algebra().unit);
  const Complex deg = base.inner(base.algebra().unit, t1) /
                      base.inner(base.algebra().unit, base.algebra().unit);
  out.voltage_degree = deg.real();
  out.voltage_regularity = max_abs_diff(
      t1, scale(Complex(out.voltage_degree, 0.0), base.algebra().unit));

  // Conclusions on the derived side.
  const DerivedQuantumGraph derived = derived_quantum_graph(vqg, tol);
  out.derived_loopfree = loopfree_residual(derived.adjacency);
  out.derived_undirected = undirected_residual(derived.adjacency);
  const RegularityReport reg = regularity_degree(derived.adjacency);
  out.derived_regularity = reg.residual;
  out.derived_degree = reg.degree;
  return out;
}

Matrix z2_swap_generator_assignment() {
  Matrix p(4, 4);
  p.at(0, 0) = Complex(1.0, 0.0);  // e_0 u_0 -> E(0,0)
  p.at(3, 1) = Complex(1.0, 0.0);  // e_1 u_0 -> E(1,1)
  p.at(1, 2) = Complex(1.0, 0.0);  // e_0 u_1 -> E(0,1)
  p.at(2, 3) = Complex(1.0, 0.0);  // e_1 u_1 -> E(1,0)
  return p;
}

ParametricZ2Result parametric_z2_derived(int b0, int a1, int b1, double tol) {
  for (const int v : {b0, a1, b1})
    if (v != 0 && v != 1) throw Error("parametric family expects 0/1 inputs");
  const FiniteAbelianGroup z2({2});
  QuantumSetPtr base = make_classical_set(2, tol);
  const DualAction swap =
      permutation_dual_action(base, z2, {{0, 1}, {1, 0}});
  Matrix comp0(2, 2), comp1(2, 2);
  comp0.at(0, 1) = comp0.at(1, 0) = Complex(static_cast<double>(b0), 0.0);
  comp1.at(0, 0) = comp1.at(1, 1) = Complex(static_cast<double>(a1), 0.0);
  comp1.at(0, 1) = comp1.at(1, 0) = Complex(static_cast<double>(b1), 0.0);
  const VoltageQuantumGraph vqg = make_voltage_quantum_graph(
      base, z2, swap, {comp0, comp1}, tol);
  const DerivedQuantumGraph derived = derived_quantum_graph(vqg, tol);

  const Matrix p = z2_swap_generator_assignment();
  ParametricZ2Result out;
  out.derived = p * derived.adjacency.matrix * p.transpose();

  const double da1 = a1, dsum = b0 + b1, ddif = b0 - b1;
  out.closed_form = Matrix(4, 4);
  out.closed_form.at(0, 0) = da1;
  out.closed_form.at(0, 3) = dsum;
  out.closed_form.at(1, 1) = -da1;
  out.closed_form.at(1, 2) = ddif;
  out.closed_form.at(2, 1) = ddif;
  out.closed_form.at(2, 2) = -da1;
  out.closed_form.at(3, 0) = dsum;
  out.closed_form.at(3, 3) = da1;
  out.residual = max_abs_diff(out.derived, out.closed_form);
  return out;
}

}  // namespace qvolt
