// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "doctest.h"
#include "qvolt/fdca.hpp"

using namespace qvolt;

namespace {

// Matrix-unit index in make_tracial_matrix_set(n).
std::size_t eu(std::size_t n, std::size_t i, std::size_t j) {
  return i * n + j;
}

Matrix random_map(std::mt19937_64& rng, std::size_t d) {
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double re = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
      const double im = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
      m.at(i, j) = Complex(re, im);
    }
  return m;
}

}  // namespace

TEST_CASE("classical sets") {
  const auto one = make_classical_set(1);
  CHECK(one->dim() == 1);
  CHECK(std::abs(one->algebra().psi_of(one->algebra().unit) -
                 Complex(1.0, 0.0)) < 1e-15);

  const auto three = make_classical_set(3);
  // m*(e_2) = e_2 (x) e_2
  const CVec col = three->comult().column(2);
  for (std::size_t idx = 0; idx < 9; ++idx)
    CHECK(std::abs(col[idx] - (idx == 8 ? Complex(1.0, 0.0)
                                        : Complex(0.0, 0.0))) < 1e-12);

  const auto four = make_classical_set(4);
  CHECK(max_abs_diff(four->gram(), Matrix::identity(4)) < 1e-12);
  CHECK(four->report().mm_star_residual < 1e-13);
  CHECK(four->report().counit_residual < 1e-13);
  CHECK(four->report().coassoc_residual < 1e-13);
}

TEST_CASE("tracial matrix set") {
  const auto m2 = make_tracial_matrix_set(2);
  CHECK(m2->dim() == 4);
  // psi(Id) = n^2 = 4 for (M_2, 2 Tr).
  CHECK(std::abs(m2->algebra().psi_of(m2->algebra().unit) -
                 Complex(4.0, 0.0)) < 1e-14);
  CHECK(max_abs_diff(m2->gram(), Matrix::identity(4) * 2.0) < 1e-12);

  // m*(E_00) = (E_00 (x) E_00 + E_01 (x) E_10) / 2.
  const CVec col = m2->comult().column(eu(2, 0, 0));
  CVec want(16, Complex(0.0, 0.0));
  want[eu(2, 0, 0) * 4 + eu(2, 0, 0)] = Complex(0.5, 0.0);
  want[eu(2, 0, 1) * 4 + eu(2, 1, 0)] = Complex(0.5, 0.0);
  CHECK(max_abs_diff(col, want) < 1e-12);

  // The GNS adjoint relation <m(a (x) b), c> = <a (x) b, m*(c)> holds for
  // all basis triples (independent of the solver route that built m*).
  const auto& alg = m2->algebra();
  const Matrix gram2 = Matrix::kron(m2->gram(), m2->gram());
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        const CVec ab = kron_vec(unit_vec(4, a), unit_vec(4, b));
        const Complex lhs =
            m2->inner(alg.mult.apply(ab), unit_vec(4, c));
        const Complex rhs =
            dot(ab, gram2.apply(m2->comult().column(c)));
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }

  // n = 1 coincides with the one-point classical set.
  const auto m1 = make_tracial_matrix_set(1);
  const auto c1 = make_classical_set(1);
  CHECK(max_abs_diff(m1->algebra().mult, c1->algebra().mult) < 1e-15);
  CHECK(max_abs_diff(m1->algebra().psi, c1->algebra().psi) < 1e-15);
}

TEST_CASE("unscaled trace on M_2 is not a quantum set functional") {
  auto alg = make_tracial_matrix_set(2)->algebra();
  for (auto& v : alg.psi) v *= 0.5;  // psi = Tr
  const QuantumSetReport rep = verify_quantum_set(alg, 1e-9);
  CHECK(rep.mm_star_residual == doctest::Approx(1.0));
  CHECK_FALSE(rep.pass(1e-9));
  CHECK_THROWS_AS(QuantumSet::create(alg, 1e-9), Error);
}

TEST_CASE("structural star-algebra violations throw with a location") {
  auto alg = make_classical_set(2)->algebra();
  alg.mult.at(0, 1 * 2 + 1) = Complex(1.0, 0.0);  // e_1 e_1 = e_0 + e_1
  CHECK_THROWS_WITH_AS(static_cast<void>(verify_quantum_set(alg, 1e-9)),
                       doctest::Contains("associativity"), Error);
}

TEST_CASE("group algebra set") {
  const GroupAlgebraSet ga = group_algebra_set(FiniteAbelianGroup({2}));
  const auto& alg = ga.qset->algebra();
  CHECK(std::abs(alg.psi_of(ga.char_function(0)) - Complex(2.0, 0.0)) < 1e-14);
  CHECK(std::abs(alg.psi_of(ga.char_function(1)) - Complex(0.0, 0.0)) < 1e-14);

  // <e_chi, e_xi> = n delta.
  for (const auto& orders : {std::vector<std::int64_t>{3}, {2, 2}}) {
    const GroupAlgebraSet g = group_algebra_set(FiniteAbelianGroup(orders));
    const double n = static_cast<double>(g.group.order());
    for (std::size_t a = 0; a < g.group.order(); ++a)
      for (std::size_t b = 0; b < g.group.order(); ++b) {
        const Complex want = a == b ? Complex(n, 0.0) : Complex(0.0, 0.0);
        CHECK(std::abs(g.qset->inner(g.char_function(a), g.char_function(b)) -
                       want) < 1e-10);
      }
    CHECK(max_abs_diff(g.indicator_to_char * g.char_to_indicator,
                       Matrix::identity(g.group.order())) < 1e-12);
  }

  const GroupAlgebraSet z1 = group_algebra_set(FiniteAbelianGroup({1}));
  CHECK(z1.qset->dim() == 1);
  CHECK(std::abs(z1.qset->algebra().psi[0] - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("tensor product quantum sets") {
  const auto c2 = make_classical_set(2);
  const auto c3 = make_classical_set(3);
  const auto t = tensor_product_qset(*c2, *c3);
  const auto c6 = make_classical_set(6);
  CHECK(max_abs_diff(t->algebra().mult, c6->algebra().mult) < 1e-15);
  CHECK(max_abs_diff(t->algebra().star, c6->algebra().star) < 1e-15);
  CHECK(max_abs_diff(t->algebra().psi, c6->algebra().psi) < 1e-15);

  const GroupAlgebraSet gz2 = group_algebra_set(FiniteAbelianGroup({2}));
  const auto t2 = tensor_product_qset(*c2, *gz2.qset);
  CHECK(t2->dim() == 4);
  CHECK(std::abs(t2->algebra().psi_of(t2->algebra().unit) -
                 Complex(4.0, 0.0)) < 1e-13);

  const auto m2 = make_tracial_matrix_set(2);
  const auto t3 = tensor_product_qset(*m2, *make_classical_set(1));
  CHECK(max_abs_diff(t3->algebra().mult, m2->algebra().mult) < 1e-15);
  CHECK(max_abs_diff(t3->algebra().psi, m2->algebra().psi) < 1e-15);
}

TEST_CASE("adjoints with respect to the GNS inner product") {
  const auto c3 = make_classical_set(3);
  CHECK(max_abs_diff(c3->adjoint_map(Matrix::identity(3)),
                     Matrix::identity(3)) < 1e-14);
  Matrix sym(3, 3);
  sym.at(0, 1) = sym.at(1, 0) = Complex(1.0, 0.0);
  sym.at(2, 2) = Complex(1.0, 0.0);
  CHECK(max_abs_diff(c3->adjoint_map(sym), sym) < 1e-13);

  // On (M_2, 2Tr): the adjoint of left multiplication by E_01 is left
  // multiplication by E_10.
  const auto m2 = make_tracial_matrix_set(2);
  const auto& alg = m2->algebra();
  const Matrix l01 = alg.left_mult(unit_vec(4, eu(2, 0, 1)));
  const Matrix l10 = alg.left_mult(unit_vec(4, eu(2, 1, 0)));
  CHECK(max_abs_diff(m2->adjoint_map(l01), l10) < 1e-12);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const Complex lhs = m2->inner(l10.apply(unit_vec(4, a)), unit_vec(4, b));
      const Complex rhs = m2->inner(unit_vec(4, a), l01.apply(unit_vec(4, b)));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }

  // adjoint(adjoint(T)) = T for random maps on a non-classical set.
  std::mt19937_64 rng(5);
  const auto blocks = make_tracial_blocks_set({2, 1});
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix t = random_map(rng, blocks->dim());
    CHECK(max_abs_diff(blocks->adjoint_map(blocks->adjoint_map(t)), t) < 1e-10);
  }
}

TEST_CASE("quantum set isomorphism residuals") {
  const auto c2a = make_classical_set(2);
  const auto c2b = make_classical_set(2);
  const CheckReport id_rep =
      verify_qset_isomorphism(Matrix::identity(2), *c2a, *c2b, 1e-9);
  CHECK(id_rep.pass(1e-9));

  Matrix swap(2, 2);
  swap.at(0, 1) = swap.at(1, 0) = Complex(1.0, 0.0);
  CHECK(verify_qset_isomorphism(swap, *c2a, *c2b, 1e-9).pass(1e-9));

  // Scaling the basis breaks multiplicativity.
  const CheckReport bad =
      verify_qset_isomorphism(Matrix::identity(2) * 2.0, *c2a, *c2b, 1e-9);
  CHECK_FALSE(bad.pass(1e-9));
  CHECK(bad.find("multiplicative")->residual > 1.0);
}

TEST_CASE("wedderburn on commutative and block algebras") {
  for (std::size_t n : {1, 2, 4}) {
    const auto cn = make_classical_set(n);
    const BlockDecomposition dec = wedderburn_decompose(*cn, 1e-9, 1);
    CHECK(dec.blocks.size() == n);
    for (const auto& b : dec.blocks) CHECK(b.size == 1);
    CHECK(dec.report.pass(1e-9));
  }

  const auto m2 = make_tracial_matrix_set(2);
  const BlockDecomposition dm2 = wedderburn_decompose(*m2, 1e-9, 1);
  REQUIRE(dm2.blocks.size() == 1);
  CHECK(dm2.blocks[0].size == 2);
  CHECK(dm2.report.pass(1e-9));
  // Pushed-forward weight must be 2 Id for the tracial functional.
  CHECK(max_abs_diff(dm2.blocks[0].weight, Matrix::identity(2) * 2.0) < 1e-9);

  const auto mixed = make_tracial_blocks_set({2, 1});
  const BlockDecomposition dmx = wedderburn_decompose(*mixed, 1e-9, 3);
  REQUIRE(dmx.blocks.size() == 2);
  std::vector<std::size_t> sizes{dmx.blocks[0].size, dmx.blocks[1].size};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2});
  CHECK(dmx.report.pass(1e-9));

  // Determinism for a fixed seed.
  const BlockDecomposition again = wedderburn_decompose(*mixed, 1e-9, 3);
  CHECK(max_abs_diff(again.iso, dmx.iso) == 0.0);
}
