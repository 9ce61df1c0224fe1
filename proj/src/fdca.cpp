// SPDX-License-Identifier: Apache-2.0
#include "qvolt/fdca.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace qvolt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string index_pair(std::size_t d, std::size_t col) {
  std::ostringstream os;
  os << '(' << col / d << ',' << col % d << ')';
  return os.str();
}

}  // namespace

void CheckReport::merge(const CheckReport& other, const std::string& prefix) {
  for (const auto& c : other.checks) add(prefix + c.name, c.residual);
}

double CheckReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.residual);
  return m;
}

const Check* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

CVec StarAlgebra::multiply(const CVec& a, const CVec& b) const {
  return mult.apply(kron_vec(a, b));
}

CVec StarAlgebra::star_of(const CVec& x) const {
  CVec cx = x;
  for (auto& v : cx) v = std::conj(v);
  return star.apply(cx);
}

Complex StarAlgebra::psi_of(const CVec& x) const {
  if (x.size() != dim) throw Error("psi: size mismatch");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < dim; ++i) s += psi[i] * x[i];
  return s;
}

Matrix StarAlgebra::left_mult(const CVec& a) const {
  Matrix l(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i] == Complex(0.0, 0.0)) continue;
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k)
        l.at(k, j) += a[i] * mult.at(k, i * dim + j);
  }
  return l;
}

Matrix StarAlgebra::right_mult(const CVec& a) const {
  Matrix r(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (a[j] == Complex(0.0, 0.0)) continue;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        r.at(k, i) += a[j] * mult.at(k, i * dim + j);
  }
  return r;
}

Matrix StarAlgebra::gram() const {
  Matrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const CVec si = star.column(i);
    for (std::size_t j = 0; j < dim; ++j) {
      CVec prod(dim, Complex(0.0, 0.0));
      for (std::size_t p = 0; p < dim; ++p) {
        if (si[p] == Complex(0.0, 0.0)) continue;
        for (std::size_t k = 0; k < dim; ++k)
          prod[k] += si[p] * mult.at(k, p * dim + j);
      }
      g.at(i, j) = psi_of(prod);
    }
  }
  return g;
}

CheckReport verify_star_algebra(const StarAlgebra& alg, double tol) {
  const std::size_t d = alg.dim;
  if (d == 0 || alg.mult.rows() != d || alg.mult.cols() != d * d ||
      alg.star.rows() != d || alg.star.cols() != d || alg.unit.size() != d ||
      alg.psi.size() != d)
    throw Error("star algebra: inconsistent dimensions");

  CheckReport report;

  // Associativity via the left regular representation: L(b_i b_j) must
  // equal L(b_i) L(b_j) for all pairs.
  std::vector<Matrix> left(d);
  for (std::size_t i = 0; i < d; ++i) left[i] = alg.left_mult(unit_vec(d, i));
  double assoc = 0.0;
  std::size_t worst_i = 0, worst_j = 0, worst_k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Matrix diff =
          alg.left_mult(alg.mult.column(i * d + j)) - left[i] * left[j];
      for (std::size_t k = 0; k < d; ++k) {
        const double r = max_abs(diff.column(k));
        if (r > assoc) {
          assoc = r;
          worst_i = i;
          worst_j = j;
          worst_k = k;
        }
      }
    }
  }
  if (assoc > tol) {
    std::ostringstream os;
    os << "star algebra: associativity violated, (b_" << worst_i << " b_"
       << worst_j << ") b_" << worst_k << " != b_" << worst_i << " (b_"
       << worst_j << " b_" << worst_k << "), residual " << assoc;
    throw Error(os.str());
  }
  report.add("associativity", assoc);

  report.add("unit_left", max_abs_diff(alg.left_mult(alg.unit),
                                       Matrix::identity(d)));
  report.add("unit_right", max_abs_diff(alg.right_mult(alg.unit),
                                        Matrix::identity(d)));

  const double invol =
      max_abs_diff(alg.star * alg.star.conj(), Matrix::identity(d));
  if (invol > tol)
    throw Error("star algebra: star is not involutive, residual " +
                std::to_string(invol));
  report.add("star_involution", invol);

  double antimult = 0.0;
  std::size_t worst_anti = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double r = max_abs_diff(
          alg.star_of(alg.mult.column(i * d + j)),
          alg.multiply(alg.star.column(j), alg.star.column(i)));
      if (r > antimult) {
        antimult = r;
        worst_anti = i * d + j;
      }
    }
  }
  if (antimult > tol)
    throw Error("star algebra: (ab)* != b* a* at basis pair " +
                index_pair(d, worst_anti) + ", residual " +
                std::to_string(antimult));
  report.add("star_antimultiplicative", antimult);

  double herm = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    herm = std::max(herm, std::abs(alg.psi_of(alg.star.column(i)) -
                                   std::conj(alg.psi[i])));
  }
  report.add("psi_hermitian", herm);
  return report;
}

namespace {

/// (psi (x) Id) and (Id (x) psi) as d x d^2 matrices.
Matrix counit_left(const CVec& psi, std::size_t d) {
  Matrix m(d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.at(j, i * d + j) = psi[i];
  return m;
}

Matrix counit_right(const CVec& psi, std::size_t d) {
  Matrix m(d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m.at(i, i * d + j) = psi[j];
  return m;
}

double coassociativity_residual(const Matrix& comult, std::size_t d) {
  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const CVec w = comult.column(j);
    // (Id (x) m*) w
    CVec lhs(d * d * d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
      CVec wi(w.begin() + static_cast<long>(i * d),
              w.begin() + static_cast<long>((i + 1) * d));
      const CVec out = comult.apply(wi);
      std::copy(out.begin(), out.end(), lhs.begin() + static_cast<long>(i * d * d));
    }
    // (m* (x) Id) w
    Matrix wmat(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) wmat.at(i, k) = w[i * d + k];
    const Matrix rhs_mat = comult * wmat;  // (d^2 x d), row-major flatten
    double r = 0.0;
    for (std::size_t idx = 0; idx < lhs.size(); ++idx)
      r = std::max(r, std::abs(lhs[idx] - rhs_mat.data()[idx]));
    worst = std::max(worst, r);
  }
  return worst;
}

Matrix compute_comult(const StarAlgebra& alg, const Matrix& gram) {
  const Matrix rhs = alg.mult.dagger() * gram;   // d^2 x d
  const LuFactors lu(Matrix::kron(gram, gram));  // d^2 x d^2
  return lu.solve(rhs);
}

}  // namespace

QuantumSetReport verify_quantum_set(const StarAlgebra& alg, double tol) {
  verify_star_algebra(alg, tol);
  QuantumSetReport rep;
  const Matrix gram = alg.gram();
  const double gram_herm = max_abs_diff(gram, gram.dagger());
  if (gram_herm > tol)
    throw Error("quantum set: Gram matrix not hermitian, residual " +
                std::to_string(gram_herm));
  const HermitianEigen ge = eigh(gram);
  rep.gram_min_eigenvalue = ge.values.front();
  if (rep.gram_min_eigenvalue <= tol) {
    rep.mm_star_residual = kInf;
    rep.counit_residual = kInf;
    rep.coassoc_residual = kInf;
    return rep;
  }
  const std::size_t d = alg.dim;
  const Matrix comult = compute_comult(alg, gram);
  rep.mm_star_residual =
      max_abs_diff(alg.mult * comult, Matrix::identity(d));
  const double cl =
      max_abs_diff(counit_left(alg.psi, d) * comult, Matrix::identity(d));
  const double cr =
      max_abs_diff(counit_right(alg.psi, d) * comult, Matrix::identity(d));
  rep.counit_residual = std::max(cl, cr);
  rep.coassoc_residual = coassociativity_residual(comult, d);
  return rep;
}

QuantumSet QuantumSet::create(StarAlgebra alg, double tol) {
  QuantumSet qs;
  qs.report_ = verify_quantum_set(alg, tol);
  if (!qs.report_.pass(tol)) {
    std::ostringstream os;
    os << "not a quantum set: mm* residual " << qs.report_.mm_star_residual
       << ", counit " << qs.report_.counit_residual << ", coassoc "
       << qs.report_.coassoc_residual << ", gram min eigenvalue "
       << qs.report_.gram_min_eigenvalue;
    throw Error(os.str());
  }
  qs.alg_ = std::move(alg);
  qs.gram_ = qs.alg_.gram();
  qs.gram_inv_ = inverse(qs.gram_);
  qs.comult_ = compute_comult(qs.alg_, qs.gram_);
  qs.tol_ = tol;
  return qs;
}

Complex QuantumSet::inner(const CVec& a, const CVec& b) const {
  return dot(a, gram_.apply(b));
}

Matrix QuantumSet::adjoint_map(const Matrix& t) const {
  if (t.rows() != dim() || t.cols() != dim())
    throw Error("adjoint: map has wrong shape");
  return gram_inv_ * t.dagger() * gram_;
}

Matrix adjoint_map_between(const QuantumSet& dom, const QuantumSet& cod,
                           const Matrix& t) {
  if (t.rows() != cod.dim() || t.cols() != dom.dim())
    throw Error("adjoint: map has wrong shape");
  return dom.gram_inverse() * t.dagger() * cod.gram();
}

QuantumSetPtr make_classical_set(std::size_t size, double tol) {
  if (size < 1) throw Error("classical set: size must be positive");
  StarAlgebra alg;
  alg.dim = size;
  alg.mult = Matrix(size, size * size);
  for (std::size_t v = 0; v < size; ++v)
    alg.mult.at(v, v * size + v) = Complex(1.0, 0.0);
  alg.star = Matrix::identity(size);
  alg.unit = CVec(size, Complex(1.0, 0.0));
  alg.psi = CVec(size, Complex(1.0, 0.0));
  for (std::size_t v = 0; v < size; ++v)
    alg.basis_labels.push_back("e" + std::to_string(v));
  return std::make_shared<const QuantumSet>(QuantumSet::create(alg, tol));
}

QuantumSetPtr make_tracial_matrix_set(std::size_t n, double tol) {
  return make_tracial_blocks_set({n}, tol);
}

QuantumSetPtr make_tracial_blocks_set(const std::vector<std::size_t>& blocks,
                                      double tol) {
  if (blocks.empty()) throw Error("tracial blocks: no blocks given");
  std::size_t dim = 0;
  for (const auto n : blocks) {
    if (n < 1) throw Error("tracial blocks: block sizes must be positive");
    dim += n * n;
  }
  StarAlgebra alg;
  alg.dim = dim;
  alg.mult = Matrix(dim, dim * dim);
  alg.star = Matrix(dim, dim);
  alg.unit = CVec(dim, Complex(0.0, 0.0));
  alg.psi = CVec(dim, Complex(0.0, 0.0));

  std::size_t offset = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::size_t n = blocks[b];
    auto unit_index = [&](std::size_t i, std::size_t j) {
      return offset + i * n + j;
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t k = unit_index(i, j);
        std::ostringstream label;
        if (blocks.size() > 1) label << 'B' << b << ':';
        label << "E(" << i << ',' << j << ')';
        alg.basis_labels.push_back(label.str());
        alg.star.at(unit_index(j, i), k) = Complex(1.0, 0.0);
        // E(i,j) E(p,q) = delta_{jp} E(i,q)
        for (std::size_t q = 0; q < n; ++q)
          alg.mult.at(unit_index(i, q), k * dim + unit_index(j, q)) =
              Complex(1.0, 0.0);
        if (i == j) {
          alg.unit[k] = Complex(1.0, 0.0);
          alg.psi[k] = Complex(static_cast<double>(n), 0.0);
        }
      }
    }
    offset += n * n;
  }
  return std::make_shared<const QuantumSet>(QuantumSet::create(alg, tol));
}

GroupAlgebraSet group_algebra_set(const FiniteAbelianGroup& group, double tol) {
  const std::size_t n = group.order();
  StarAlgebra alg;
  alg.dim = n;
  alg.mult = Matrix(n, n * n);
  for (std::size_t v = 0; v < n; ++v)
    alg.mult.at(v, v * n + v) = Complex(1.0, 0.0);
  alg.star = Matrix::identity(n);
  alg.unit = CVec(n, Complex(1.0, 0.0));
  alg.psi = CVec(n, Complex(1.0, 0.0));
  for (const auto& g : group.enumerate())
    alg.basis_labels.push_back("e" + group.to_string(g));

  GroupAlgebraSet out{
      std::make_shared<const QuantumSet>(QuantumSet::create(alg, tol)), group,
      Matrix(n, n), Matrix(n, n)};
  const auto elements = group.enumerate();
  const auto characters = group.enumerate_dual();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < n; ++g)
      out.char_to_indicator.at(g, c) = pairing(group, characters[c], elements[g]);
  // The character matrix U satisfies U^H U = n Id.
  out.indicator_to_char =
      out.char_to_indicator.dagger() * Complex(1.0 / static_cast<double>(n), 0.0);
  return out;
}

QuantumSetPtr tensor_product_qset(const QuantumSet& a, const QuantumSet& b,
                                  double tol) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  const std::size_t d = da * db;
  const auto& alga = a.algebra();
  const auto& algb = b.algebra();
  StarAlgebra alg;
  alg.dim = d;
  alg.mult = Matrix(d, d * d);
  alg.star = Matrix(d, d);
  alg.unit = kron_vec(alga.unit, algb.unit);
  alg.psi = kron_vec(alga.psi, algb.psi);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t p = 0; p < db; ++p)
      alg.basis_labels.push_back(alga.basis_labels[i] + "(x)" +
                                 algb.basis_labels[p]);

  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t p = 0; p < db; ++p) {
      const std::size_t row_i = i * db + p;
      alg.star.set_column(row_i, kron_vec(alga.star.column(i),
                                          algb.star.column(p)));
      for (std::size_t j = 0; j < da; ++j) {
        const CVec ma = alga.mult.column(i * da + j);
        for (std::size_t q = 0; q < db; ++q) {
          const CVec mb = algb.mult.column(p * db + q);
          alg.mult.set_column(row_i * d + (j * db + q), kron_vec(ma, mb));
        }
      }
    }
  }
  return std::make_shared<const QuantumSet>(QuantumSet::create(alg, tol));
}

bool is_classical_set(const QuantumSet& qs, double tol) {
  const std::size_t d = qs.dim();
  const auto& alg = qs.algebra();
  Matrix mult(d, d * d);
  for (std::size_t v = 0; v < d; ++v) mult.at(v, v * d + v) = Complex(1.0, 0.0);
  return max_abs_diff(alg.mult, mult) < tol &&
         max_abs_diff(alg.star, Matrix::identity(d)) < tol &&
         max_abs_diff(alg.psi, CVec(d, Complex(1.0, 0.0))) < tol &&
         max_abs_diff(alg.unit, CVec(d, Complex(1.0, 0.0))) < tol;
}

CheckReport verify_qset_isomorphism(const Matrix& phi, const QuantumSet& qs1,
                                    const QuantumSet& qs2, double tol) {
  (void)tol;
  if (qs1.dim() != qs2.dim() || phi.rows() != qs2.dim() ||
      phi.cols() != qs1.dim())
    throw Error("isomorphism check: dimension mismatch");
  const auto& a1 = qs1.algebra();
  const auto& a2 = qs2.algebra();
  CheckReport rep;
  rep.add("multiplicative",
          max_abs_diff(phi * a1.mult, a2.mult * Matrix::kron(phi, phi)));
  rep.add("star", max_abs_diff(phi * a1.star, a2.star * phi.conj()));
  rep.add("unit", max_abs_diff(phi.apply(a1.unit), a2.unit));
  double psi_res = 0.0;
  for (std::size_t i = 0; i < qs1.dim(); ++i)
    psi_res = std::max(psi_res,
                       std::abs(a2.psi_of(phi.column(i)) - a1.psi[i]));
  rep.add("psi_compat", psi_res);
  double inv_res = kInf;
  try {
    inv_res = max_abs_diff(phi * inverse(phi), Matrix::identity(phi.rows()));
  } catch (const Error&) {
  }
  rep.add("invertibility", inv_res);
  return rep;
}

namespace {

struct Sqrts {
  Matrix half;
  Matrix half_inv;
};

Sqrts hermitian_sqrt(const Matrix& g) {
  const HermitianEigen e = eigh(g);
  const std::size_t n = g.rows();
  Matrix dh(n, n), dhi(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (e.values[i] <= 0.0)
      throw Error("hermitian sqrt: matrix not positive definite");
    dh.at(i, i) = Complex(std::sqrt(e.values[i]), 0.0);
    dhi.at(i, i) = Complex(1.0 / std::sqrt(e.values[i]), 0.0);
  }
  const Matrix vh = e.vectors.dagger();
  return {e.vectors * dh * vh, e.vectors * dhi * vh};
}

/// Pivoted modified Gram-Schmidt on the columns of m (standard inner
/// product); keeps columns whose remaining norm exceeds cutoff * initial max.
Matrix orthonormal_column_space(const Matrix& m, double cutoff) {
  std::vector<CVec> work;
  for (std::size_t c = 0; c < m.cols(); ++c) work.push_back(m.column(c));
  double max_norm = 0.0;
  for (const auto& w : work) max_norm = std::max(max_norm, std::sqrt(dot(w, w).real()));
  std::vector<CVec> basis;
  std::vector<bool> used(work.size(), false);
  for (;;) {
    double best = 0.0;
    std::size_t pick = work.size();
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c]) continue;
      const double norm = std::sqrt(dot(work[c], work[c]).real());
      if (norm > best) {
        best = norm;
        pick = c;
      }
    }
    if (pick == work.size() || best <= cutoff * max_norm) break;
    used[pick] = true;
    CVec q = scale(Complex(1.0 / best, 0.0), work[pick]);
    basis.push_back(q);
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c]) continue;
      work[c] = sub(work[c], scale(dot(q, work[c]), q));
    }
  }
  if (basis.empty()) return Matrix(m.rows(), 0);
  return Matrix::from_columns(basis);
}

std::vector<double> spectrum_of_element(const StarAlgebra& alg, const CVec& x,
                                        const Matrix& basis, const Sqrts& gs) {
  // Left multiplication by x restricted to the span of the (standard-
  // orthonormal) basis columns; similar to a hermitian matrix when x is
  // hermitian, after conjugation with the restricted Gram square root.
  const Matrix op = basis.dagger() * (alg.left_mult(x) * basis);
  return eigh(gs.half * op * gs.half_inv).values;
}

class Randomizer {
 public:
  explicit Randomizer(std::uint64_t seed) : rng_(seed) {}

  double real() {
    // 53-bit mantissa in [-1, 1); stable across standard libraries.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
  }
  Complex complex_value() { return Complex(real(), real()); }
  CVec vec(std::size_t n) {
    CVec v(n);
    for (auto& x : v) x = complex_value();
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

BlockDecomposition wedderburn_decompose(const QuantumSet& qs, double tol,
                                        std::uint64_t seed) {
  const auto& alg = qs.algebra();
  const std::size_t d = alg.dim;

  // Center: solve [z, b_i] = 0 for all basis elements.
  Matrix stacked(d * d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix comm = alg.left_mult(unit_vec(d, i)) -
                        alg.right_mult(unit_vec(d, i));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        stacked.at(i * d + r, c) = comm.at(r, c);
  }
  const Matrix center = nullspace(stacked, std::sqrt(tol));
  const std::size_t center_dim = center.cols();
  if (center_dim == 0) throw Error("wedderburn: empty center");

  const Sqrts gs = hermitian_sqrt(qs.gram());
  Randomizer rng(seed == 0 ? 0x9e3779b97f4a7c15ULL : seed);

  std::string last_failure = "degenerate random draw";
  for (int attempt = 0; attempt < 8; ++attempt) {
    // Random hermitian central element.
    CVec h(d, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < center_dim; ++j)
      h = add(h, scale(rng.complex_value(), center.column(j)));
    h = scale(Complex(0.5, 0.0), add(h, alg.star_of(h)));
    if (max_abs(h) < 1e-8) continue;

    const std::vector<double> values =
        spectrum_of_element(alg, h, Matrix::identity(d), gs);
    double scale_v = 1.0;
    for (const double v : values) scale_v = std::max(scale_v, std::abs(v));
    const auto clusters = cluster_sorted(values, 1e-6 * scale_v);

    bool ok = true;
    std::vector<double> lambdas;
    std::vector<std::size_t> sizes;
    for (const auto& [begin, end] : clusters) {
      if (values[end - 1] - values[begin] > 1e-8 * scale_v) {
        ok = false;
        break;
      }
      const std::size_t count = end - begin;
      const auto n = static_cast<std::size_t>(std::llround(std::sqrt(
          static_cast<double>(count))));
      if (n * n != count) {
        ok = false;
        break;
      }
      sizes.push_back(n);
      double mean = 0.0;
      for (std::size_t k = begin; k < end; ++k) mean += values[k];
      lambdas.push_back(mean / static_cast<double>(count));
    }
    if (!ok) {
      last_failure = "eigenvalue clusters are not square-sized";
      continue;
    }

    // Minimal central idempotents via Lagrange interpolation in the algebra.
    std::vector<CVec> idempotents;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      CVec p = alg.unit;
      for (std::size_t j = 0; j < lambdas.size(); ++j) {
        if (j == i) continue;
        const CVec shifted =
            sub(h, scale(Complex(lambdas[j], 0.0), alg.unit));
        p = scale(Complex(1.0 / (lambdas[i] - lambdas[j]), 0.0),
                  alg.multiply(p, shifted));
      }
      idempotents.push_back(p);
    }
    double idem_res = 0.0;
    CVec sum_p(d, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < idempotents.size(); ++i) {
      const auto& p = idempotents[i];
      idem_res = std::max(idem_res, max_abs_diff(alg.multiply(p, p), p));
      idem_res = std::max(idem_res, max_abs_diff(alg.star_of(p), p));
      sum_p = add(sum_p, p);
    }
    idem_res = std::max(idem_res, max_abs_diff(sum_p, alg.unit));
    if (idem_res > 1e-8) {
      last_failure = "central idempotents failed validation";
      continue;
    }

    // Matrix units per block.
    bool block_ok = true;
    std::vector<std::vector<CVec>> units_per_block;  // row-major per block
    for (std::size_t bi = 0; bi < sizes.size() && block_ok; ++bi) {
      const std::size_t n = sizes[bi];
      const CVec& p = idempotents[bi];
      if (n == 1) {
        units_per_block.push_back({p});
        continue;
      }
      const Matrix block_basis =
          orthonormal_column_space(alg.left_mult(p), 0.5);
      if (block_basis.cols() != n * n) {
        block_ok = false;
        last_failure = "block basis has unexpected rank";
        break;
      }
      const Sqrts block_gs =
          hermitian_sqrt(block_basis.dagger() * qs.gram() * block_basis);

      std::vector<CVec> minimal;  // n orthogonal minimal projections
      bool found = false;
      for (int inner = 0; inner < 8 && !found; ++inner) {
        CVec y = alg.multiply(alg.multiply(p, rng.vec(d)), p);
        y = scale(Complex(0.5, 0.0), add(y, alg.star_of(y)));
        const std::vector<double> mus_raw =
            spectrum_of_element(alg, y, block_basis, block_gs);
        double ms = 1.0;
        for (const double v : mus_raw) ms = std::max(ms, std::abs(v));
        const auto mu_clusters = cluster_sorted(mus_raw, 1e-6 * ms);
        if (mu_clusters.size() != n) continue;
        std::vector<double> mus;
        bool sizes_ok = true;
        for (const auto& [begin, end] : mu_clusters) {
          if (end - begin != n) sizes_ok = false;
          double mean = 0.0;
          for (std::size_t k = begin; k < end; ++k) mean += mus_raw[k];
          mus.push_back(mean / static_cast<double>(end - begin));
        }
        if (!sizes_ok) continue;
        minimal.clear();
        for (std::size_t j = 0; j < n; ++j) {
          CVec e = p;
          for (std::size_t l = 0; l < n; ++l) {
            if (l == j) continue;
            const CVec shifted = sub(y, scale(Complex(mus[l], 0.0), p));
            e = scale(Complex(1.0 / (mus[j] - mus[l]), 0.0),
                      alg.multiply(e, shifted));
          }
          minimal.push_back(e);
        }
        double min_res = 0.0;
        for (const auto& e : minimal) {
          min_res = std::max(min_res, max_abs_diff(alg.multiply(e, e), e));
          min_res = std::max(min_res, max_abs_diff(alg.star_of(e), e));
        }
        if (min_res < 1e-8) found = true;
      }
      if (!found) {
        block_ok = false;
        last_failure = "no usable minimal projections in a block";
        break;
      }

      // Partial isometries e_0 -> e_j, normalized into matrix units.
      std::vector<CVec> first_row(n);
      first_row[0] = minimal[0];
      const double psi_e0 = alg.psi_of(minimal[0]).real();
      for (std::size_t j = 1; j < n && block_ok; ++j) {
        bool got = false;
        for (int tries = 0; tries < 8 && !got; ++tries) {
          const CVec v = alg.multiply(alg.multiply(minimal[0], rng.vec(d)),
                                      minimal[j]);
          const CVec vvstar = alg.multiply(v, alg.star_of(v));
          const double c = (alg.psi_of(vvstar) / psi_e0).real();
          if (c < 1e-10) continue;
          if (max_abs_diff(vvstar, scale(Complex(c, 0.0), minimal[0])) >
              1e-8 * std::max(1.0, c))
            continue;
          first_row[j] = scale(Complex(1.0 / std::sqrt(c), 0.0), v);
          got = true;
        }
        if (!got) {
          block_ok = false;
          last_failure = "partial isometry construction failed";
        }
      }
      if (!block_ok) break;

      std::vector<CVec> units(n * n);
      for (std::size_t j = 0; j < n; ++j) {
        const CVec col_j = alg.star_of(first_row[j]);  // E(j,0)
        for (std::size_t k = 0; k < n; ++k)
          units[j * n + k] = alg.multiply(col_j, first_row[k]);
      }
      units_per_block.push_back(std::move(units));
    }
    if (!block_ok) continue;

    // Assemble the change of basis and the block data.
    std::vector<CVec> columns;
    BlockDecomposition out;
    for (std::size_t bi = 0; bi < sizes.size(); ++bi) {
      const std::size_t n = sizes[bi];
      BlockDecomposition::Block block;
      block.size = n;
      block.weight = Matrix(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          columns.push_back(units_per_block[bi][j * n + k]);
          block.weight.at(k, j) = alg.psi_of(units_per_block[bi][j * n + k]);
        }
      out.blocks.push_back(std::move(block));
    }
    const Matrix basis_matrix = Matrix::from_columns(columns);
    Matrix iso;
    try {
      iso = inverse(basis_matrix);
    } catch (const Error&) {
      last_failure = "matrix units do not span";
      continue;
    }
    out.iso = iso;
    out.iso_inv = basis_matrix;

    // Verify against the standard block algebra carrying the pushed-forward
    // functional.
    std::vector<std::size_t> block_sizes = sizes;
    StarAlgebra target;
    {
      std::size_t dim = d;
      target.dim = dim;
      target.mult = Matrix(dim, dim * dim);
      target.star = Matrix(dim, dim);
      target.unit = CVec(dim, Complex(0.0, 0.0));
      target.psi = CVec(dim, Complex(0.0, 0.0));
      std::size_t offset = 0;
      for (std::size_t bi = 0; bi < block_sizes.size(); ++bi) {
        const std::size_t n = block_sizes[bi];
        auto idx = [&](std::size_t i, std::size_t j) {
          return offset + i * n + j;
        };
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            std::ostringstream label;
            label << 'B' << bi << ":E(" << i << ',' << j << ')';
            target.basis_labels.push_back(label.str());
            target.star.at(idx(j, i), idx(i, j)) = Complex(1.0, 0.0);
            for (std::size_t q = 0; q < n; ++q)
              target.mult.at(idx(i, q), idx(i, j) * dim + idx(j, q)) =
                  Complex(1.0, 0.0);
            if (i == j) target.unit[idx(i, j)] = Complex(1.0, 0.0);
            target.psi[idx(i, j)] = out.blocks[bi].weight.at(j, i);
          }
        offset += n * n;
      }
    }
    try {
      const QuantumSet target_qs = QuantumSet::create(target, tol);
      out.report = verify_qset_isomorphism(out.iso, qs, target_qs, tol);
    } catch (const Error&) {
      last_failure = "pushed-forward functional failed verification";
      continue;
    }
    if (!out.report.pass(std::max(tol, 1e-10))) {
      last_failure = "isomorphism residuals too large";
      continue;
    }
    return out;
  }
  throw Error("wedderburn: " + last_failure +
              " after repeated attempts (tolerance too coarse?)");
}

}  // namespace qvolt
