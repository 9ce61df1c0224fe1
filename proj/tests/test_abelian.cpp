// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qvolt/abelian.hpp"

using namespace qvolt;

TEST_CASE("enumeration is lexicographic with the identity first") {
  const FiniteAbelianGroup z2({2});
  const auto e2 = z2.enumerate();
  REQUIRE(e2.size() == 2);
  CHECK(e2[0].residues == std::vector<std::int64_t>{0});
  CHECK(e2[1].residues == std::vector<std::int64_t>{1});

  const FiniteAbelianGroup z2xz3({2, 3});
  const auto e6 = z2xz3.enumerate();
  REQUIRE(e6.size() == 6);
  CHECK(e6[0].residues == std::vector<std::int64_t>{0, 0});
  CHECK(e6[1].residues == std::vector<std::int64_t>{0, 1});
  CHECK(e6[3].residues == std::vector<std::int64_t>{1, 0});
  for (std::size_t i = 0; i < 6; ++i) CHECK(z2xz3.index_of(e6[i]) == i);

  const auto d5 = FiniteAbelianGroup({5}).enumerate_dual();
  REQUIRE(d5.size() == 5);
  CHECK(d5[0].residues == std::vector<std::int64_t>{0});
}

TEST_CASE("pairing values") {
  const FiniteAbelianGroup z2({2});
  CHECK(std::abs(pairing(z2, {{1}}, {{1}}) - Complex(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(pairing(z2, {{1}}, {{0}}) - Complex(1.0, 0.0)) < 1e-15);

  const FiniteAbelianGroup z5({5});
  const Complex want = std::polar(1.0, 4.0 * std::numbers::pi / 5.0);
  CHECK(std::abs(pairing(z5, {{1}}, {{2}}) - want) < 1e-14);
  CHECK(std::abs(std::abs(pairing(z5, {{3}}, {{4}})) - 1.0) < 1e-15);
}

TEST_CASE("pairing rejects shape mismatches") {
  const FiniteAbelianGroup z2({2});
  CHECK_THROWS_AS(pairing(z2, {{1, 0}}, {{1}}), Error);
}

TEST_CASE("pairing is multiplicative in the group argument") {
  const FiniteAbelianGroup g({4, 3});
  const auto elements = g.enumerate();
  const auto characters = g.enumerate_dual();
  for (const auto& chi : characters)
    for (const auto& a : elements)
      for (const auto& b : elements) {
        const Complex lhs = pairing(g, chi, g.multiply(a, b));
        const Complex rhs = pairing(g, chi, a) * pairing(g, chi, b);
        CHECK(std::abs(lhs - rhs) < 1e-12);
      }
}

TEST_CASE("character orthogonality") {
  for (const auto& orders :
       {std::vector<std::int64_t>{2}, {3}, {5}, {2, 2}, {2, 3}}) {
    const FiniteAbelianGroup g(orders);
    const auto characters = g.enumerate_dual();
    for (const auto& chi : characters)
      for (const auto& xi : characters) {
        const Complex s = orthogonality_sum(g, chi, xi);
        const Complex want =
            chi == xi ? Complex(static_cast<double>(g.order()), 0.0)
                      : Complex(0.0, 0.0);
        CHECK(std::abs(s - want) < 1e-9);
      }
  }
}

TEST_CASE("inverses and reduction") {
  const FiniteAbelianGroup z3({3});
  CHECK(z3.inverse({{1}}).residues == std::vector<std::int64_t>{2});
  CHECK(z3.inverse({{0}}).residues == std::vector<std::int64_t>{0});
  CHECK(z3.reduce({{-1}}).residues == std::vector<std::int64_t>{2});
  CHECK(z3.reduce({{7}}).residues == std::vector<std::int64_t>{1});
  const FiniteAbelianGroup g({2, 3});
  const auto inv = g.inverse({{1, 2}});
  CHECK(inv.residues == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("trivial group") {
  const FiniteAbelianGroup t;
  CHECK(t.order() == 1);
  CHECK(t.enumerate().size() == 1);
  CHECK(std::abs(pairing(t, t.identity(), t.identity()) - Complex(1.0, 0.0)) <
        1e-15);
}
