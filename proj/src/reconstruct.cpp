// SPDX-License-Identifier: Apache-2.0
#include "qvolt/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qvolt {

CheckReport verify_landstad(const GraphAction& ga, double tol) {
  (void)tol;
  if (!ga.qset) throw Error("landstad: missing quantum set");
  const auto& qs = *ga.qset;
  const auto& alg = qs.algebra();
  const std::size_t d = qs.dim();
  const std::size_t n = ga.group.order();
  if (ga.alpha.size() != n || ga.units.size() != n)
    throw Error("landstad: one alpha per element and one u per character required");
  if (ga.target.ambient != ga.qset)
    throw Error("landstad: adjacency lives on a different quantum set");

  CheckReport rep;
  const auto elements = ga.group.enumerate();
  const auto characters = ga.group.enumerate_dual();

  double automorphism = 0.0;
  double psi_invariant = 0.0;
  for (const auto& m : ga.alpha) {
    if (m.rows() != d || m.cols() != d)
      throw Error("landstad: alpha has wrong shape");
    automorphism = std::max(
        automorphism, max_abs_diff(m * alg.mult, alg.mult * Matrix::kron(m, m)));
    automorphism =
        std::max(automorphism, max_abs_diff(m * alg.star, alg.star * m.conj()));
    automorphism =
        std::max(automorphism, max_abs_diff(m.apply(alg.unit), alg.unit));
    for (std::size_t i = 0; i < d; ++i)
      psi_invariant = std::max(
          psi_invariant, std::abs(alg.psi_of(m.column(i)) - alg.psi[i]));
  }
  rep.add("alpha_automorphism", automorphism);
  rep.add("alpha_psi_invariant", psi_invariant);
  rep.add("alpha_identity",
          max_abs_diff(ga.alpha[0], Matrix::identity(d)));
  double hom = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab =
          ga.group.index_of(ga.group.multiply(elements[a], elements[b]));
      hom = std::max(hom,
                     max_abs_diff(ga.alpha[a] * ga.alpha[b], ga.alpha[ab]));
    }
  rep.add("alpha_homomorphism", hom);

  double graph_cov = 0.0;
  for (const auto& m : ga.alpha)
    graph_cov = std::max(
        graph_cov, max_abs_diff(m * ga.target.matrix, ga.target.matrix * m));
  rep.add("alpha_commutes_with_adjacency", graph_cov);

  double urep = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (ga.units[a].size() != d) throw Error("landstad: u has wrong size");
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = ga.group.index_of(
          ga.group.multiply(characters[a], characters[b]));
      urep = std::max(urep, max_abs_diff(alg.multiply(ga.units[a], ga.units[b]),
                                         ga.units[ab]));
    }
    urep = std::max(
        urep, max_abs_diff(alg.multiply(alg.star_of(ga.units[a]), ga.units[a]),
                           alg.unit));
    urep = std::max(
        urep, max_abs_diff(alg.multiply(ga.units[a], alg.star_of(ga.units[a])),
                           alg.unit));
  }
  rep.add("u_unitary_representation", urep);
  rep.add("u_trivial_is_unit", max_abs_diff(ga.units[0], alg.unit));

  double covariance = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      const Complex phase = pairing(ga.group, characters[c], elements[a]);
      covariance = std::max(
          covariance, max_abs_diff(ga.alpha[a].apply(ga.units[c]),
                                   scale(phase, ga.units[c])));
    }
  rep.add("u_covariance", covariance);

  double psi_ad = 0.0;
  double ad_comm = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const Matrix ad = alg.left_mult(ga.units[c]) *
                      alg.right_mult(alg.star_of(ga.units[c]));
    for (std::size_t i = 0; i < d; ++i)
      psi_ad = std::max(psi_ad,
                        std::abs(alg.psi_of(ad.column(i)) - alg.psi[i]));
    ad_comm = std::max(
        ad_comm, max_abs_diff(ad * ga.target.matrix, ga.target.matrix * ad));
  }
  rep.add("psi_ad_invariant", psi_ad);
  rep.add("ad_commutes_with_adjacency", ad_comm);
  return rep;
}

GraphAction dual_graph_action(const CrossedProductPtr& cp,
                              const QuantumAdjacency& a) {
  if (a.ambient != cp->qset)
    throw Error("dual action: adjacency lives on a different quantum set");
  GraphAction ga;
  ga.qset = cp->qset;
  ga.group = cp->action.group;
  ga.units = cp->u;
  ga.target = a;
  const std::size_t n = cp->group_order();
  const std::size_t db = cp->base_dim();
  const auto elements = ga.group.enumerate();
  const auto characters = ga.group.enumerate_dual();
  for (std::size_t gi = 0; gi < n; ++gi) {
    Matrix m(cp->dim(), cp->dim());
    for (std::size_t c = 0; c < n; ++c) {
      const Complex phase = pairing(ga.group, characters[c], elements[gi]);
      for (std::size_t i = 0; i < db; ++i)
        m.at(cp->index(c, i), cp->index(c, i)) = phase;
    }
    ga.alpha.push_back(std::move(m));
  }
  return ga;
}

namespace {

/// Pivoted modified Gram-Schmidt in the inner product <x, y> = x^H W y.
Matrix orthonormalize(const std::vector<CVec>& vectors, const Matrix& weight,
                      double cutoff) {
  auto work = vectors;
  auto norm_of = [&](const CVec& v) {
    return std::sqrt(std::abs(dot(v, weight.apply(v)).real()));
  };
  double max_norm = 0.0;
  for (const auto& v : work) max_norm = std::max(max_norm, norm_of(v));
  std::vector<CVec> basis;
  std::vector<bool> used(work.size(), false);
  for (;;) {
    double best = 0.0;
    std::size_t pick = work.size();
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c]) continue;
      const double nv = norm_of(work[c]);
      if (nv > best) {
        best = nv;
        pick = c;
      }
    }
    if (pick == work.size() || best <= cutoff * max_norm) break;
    used[pick] = true;
    const CVec q = scale(Complex(1.0 / best, 0.0), work[pick]);
    basis.push_back(q);
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c]) continue;
      work[c] = sub(work[c], scale(dot(q, weight.apply(work[c])), q));
    }
  }
  if (basis.empty()) return Matrix(vectors.empty() ? 0 : vectors[0].size(), 0);
  return Matrix::from_columns(basis);
}

}  // namespace

FixedPointData fixed_point_data(const GraphAction& ga, double tol) {
  const auto& qs = *ga.qset;
  const auto& alg = qs.algebra();
  const std::size_t d = qs.dim();
  const std::size_t n = ga.group.order();

  Matrix projector(d, d);
  for (const auto& m : ga.alpha) projector = projector + m;
  projector = projector * Complex(1.0 / static_cast<double>(n), 0.0);

  FixedPointData out;
  out.report.add("projector_idempotent",
                 max_abs_diff(projector * projector, projector));
  out.report.add("projector_self_adjoint",
                 max_abs_diff(qs.adjoint_map(projector), projector));

  // psi~ = (1/n) psi restricted; orthonormalize the image of the projector.
  const Matrix weight = qs.gram() * Complex(1.0 / static_cast<double>(n), 0.0);
  std::vector<CVec> cols;
  for (std::size_t c = 0; c < d; ++c) cols.push_back(projector.column(c));
  out.basis = orthonormalize(cols, weight, 1e-7);
  const std::size_t k = out.basis.cols();
  if (k * n != d) {
    std::ostringstream os;
    os << "representation not regular: dim(B) = " << d
       << " but |G| * dim(B^alpha) = " << k * n;
    throw Error(os.str());
  }
  out.coord_map = out.basis.dagger() * weight;

  // Structure constants of the fixed-point algebra in the new basis.
  StarAlgebra fixed;
  fixed.dim = k;
  fixed.mult = Matrix(k, k * k);
  fixed.star = Matrix(k, k);
  fixed.unit = out.coord_map.apply(alg.unit);
  fixed.psi = CVec(k);
  double closure = 0.0;
  auto span_residual = [&](const CVec& v, const CVec& coords) {
    return max_abs_diff(v, out.basis.apply(coords));
  };
  for (std::size_t i = 0; i < k; ++i) {
    const CVec qi = out.basis.column(i);
    fixed.psi[i] =
        alg.psi_of(qi) * Complex(1.0 / static_cast<double>(n), 0.0);
    fixed.basis_labels.push_back("q" + std::to_string(i));
    const CVec st = alg.star_of(qi);
    const CVec st_coords = out.coord_map.apply(st);
    closure = std::max(closure, span_residual(st, st_coords));
    fixed.star.set_column(i, st_coords);
    for (std::size_t j = 0; j < k; ++j) {
      const CVec prod = alg.multiply(qi, out.basis.column(j));
      const CVec coords = out.coord_map.apply(prod);
      closure = std::max(closure, span_residual(prod, coords));
      fixed.mult.set_column(i * k + j, coords);
    }
  }
  closure = std::max(closure, span_residual(alg.unit, fixed.unit));
  out.report.add("fixed_point_closure", closure);

  out.fixed = std::make_shared<const QuantumSet>(QuantumSet::create(fixed, tol));

  // Restricted dual action Ad(u_chi).
  out.dual.base = out.fixed;
  out.dual.group = ga.group;
  double dual_closure = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const Matrix ad = alg.left_mult(ga.units[c]) *
                      alg.right_mult(alg.star_of(ga.units[c]));
    Matrix restricted(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const CVec img = ad.apply(out.basis.column(j));
      const CVec coords = out.coord_map.apply(img);
      dual_closure = std::max(dual_closure, span_residual(img, coords));
      restricted.set_column(j, coords);
    }
    out.dual.maps.push_back(std::move(restricted));
  }
  out.report.add("dual_action_closure", dual_closure);
  out.report.merge(verify_dual_action(out.dual, tol), "dual_action.");

  if (!out.report.pass(tol)) {
    std::ostringstream os;
    os << "fixed point data: residuals too large, max "
       << out.report.max_residual();
    throw Error(os.str());
  }
  return out;
}

FourierComponents fourier_components(const GraphAction& ga,
                                     const FixedPointData& fpd, double tol) {
  const auto& qs = *ga.qset;
  const auto& alg = qs.algebra();
  const std::size_t n = ga.group.order();
  const std::size_t k = fpd.basis.cols();
  const auto& group = ga.group;
  const auto characters = group.enumerate_dual();

  FourierComponents out;
  double covariant = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    // Basis (q_j u_chi) of B^alpha u_chi; psi-orthogonal with norm^2 = n.
    std::vector<CVec> sector;
    for (std::size_t j = 0; j < k; ++j)
      sector.push_back(alg.multiply(fpd.basis.column(j), ga.units[c]));
    Matrix comp(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const CVec img = ga.target.matrix.apply(sector[j]);
      CVec coords(k);
      for (std::size_t l = 0; l < k; ++l)
        coords[l] = qs.inner(sector[l], img) /
                    Complex(static_cast<double>(n), 0.0);
      CVec recon(qs.dim(), Complex(0.0, 0.0));
      for (std::size_t l = 0; l < k; ++l)
        recon = add(recon, scale(coords[l], sector[l]));
      covariant = std::max(covariant, max_abs_diff(img, recon));
      comp.set_column(j, coords);
    }
    out.maps.push_back(std::move(comp));
  }
  if (covariant > tol) {
    std::ostringstream os;
    os << "graph not covariant: adjacency does not preserve the subspaces "
          "B^alpha u_chi, residual "
       << covariant;
    throw Error(os.str());
  }
  out.report.add("sector_covariance", covariant);

  double equivariance = 0.0;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t z = 0; z < n; ++z)
      equivariance = std::max(
          equivariance, max_abs_diff(out.maps[c] * fpd.dual.maps[z],
                                     fpd.dual.maps[z] * out.maps[c]));
  out.report.add("component_equivariance", equivariance);

  const auto& fixed = *fpd.fixed;
  double convolution = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix rhs(k, k);
    for (std::size_t z = 0; z < n; ++z) {
      const std::size_t zc = group.index_of(group.multiply(
          group.inverse(characters[z]), characters[c]));
      rhs = rhs + schur_product_matrix(fixed, out.maps[z], out.maps[zc]) *
                      Complex(1.0 / static_cast<double>(n), 0.0);
    }
    convolution = std::max(convolution, max_abs_diff(out.maps[c], rhs));
  }
  out.report.add("component_convolution", convolution);

  double star_rule = 0.0;
  const Matrix& fstar = fixed.algebra().star;
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t cinv =
        group.index_of(group.inverse(characters[c]));
    star_rule = std::max(star_rule, max_abs_diff(fstar * out.maps[c].conj(),
                                                 out.maps[cinv] * fstar));
  }
  out.report.add("component_star_rule", star_rule);
  return out;
}

ReconstructionResult reconstruct_voltage(const GraphAction& ga,
                                         const FixedPointData& fpd,
                                         double tol) {
  const FourierComponents fc = fourier_components(ga, fpd, tol);
  const std::size_t n = ga.group.order();
  const std::size_t k = fpd.basis.cols();
  const auto& group = ga.group;
  const auto elements = group.enumerate();
  const auto characters = group.enumerate_dual();

  // A~_g = (1/n) sum_chi chi(g) A~_chi.
  std::vector<Matrix> components;
  for (std::size_t gi = 0; gi < n; ++gi) {
    Matrix a(k, k);
    for (std::size_t c = 0; c < n; ++c)
      a = a + fc.maps[c] * (pairing(group, characters[c], elements[gi]) /
                            static_cast<double>(n));
    components.push_back(std::move(a));
  }

  ReconstructionResult out{
      make_voltage_quantum_graph(fpd.fixed, group, fpd.dual,
                                 std::move(components), tol),
      {}, Matrix(), {}};
  out.report.merge(fc.report, "fourier.");
  out.rebuilt = derived_quantum_graph(out.vqg, tol);

  // Identification (B^alpha x| G-hat) -> B: (chi, k) column is q_k u_chi.
  const auto& alg = ga.qset->algebra();
  Matrix ident(ga.qset->dim(), n * k);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t j = 0; j < k; ++j)
      ident.set_column(c * k + j,
                       alg.multiply(fpd.basis.column(j), ga.units[c]));
  out.identification = ident;
  out.report.merge(
      verify_qset_isomorphism(ident, *out.rebuilt.crossed->qset, *ga.qset, tol),
      "identification.");
  out.report.add("roundtrip_adjacency",
                 max_abs_diff(ident * out.rebuilt.adjacency.matrix,
                              ga.target.matrix * ident));
  return out;
}

}  // namespace qvolt
