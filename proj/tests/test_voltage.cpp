// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "qvolt/voltage.hpp"

using namespace qvolt;

namespace {

ClassicalVoltageGraph z3_loop() {
  return ClassicalVoltageGraph{
      {"v"}, FiniteAbelianGroup({3}), {LabeledEdge{0, 0, {{1}}}}};
}

// Two-vertex voltage graph over Z_5 whose symmetrized derived graph is the
// Petersen graph: loops labeled 1 and 2, crossing edge labeled 0.
ClassicalVoltageGraph petersen_voltage() {
  return ClassicalVoltageGraph{{"L", "R"},
                               FiniteAbelianGroup({5}),
                               {LabeledEdge{0, 0, {{1}}},
                                LabeledEdge{1, 1, {{2}}},
                                LabeledEdge{0, 1, {{0}}}}};
}

}  // namespace

TEST_CASE("pre-simplicity") {
  ClassicalVoltageGraph g{{"a", "b"},
                          FiniteAbelianGroup({2}),
                          {LabeledEdge{0, 1, {{0}}}, LabeledEdge{0, 1, {{1}}}}};
  CHECK(is_pre_simple(g).pre_simple);  // parallel edges, distinct labels

  g.edges.push_back(LabeledEdge{0, 1, {{1}}});
  const PreSimpleReport rep = is_pre_simple(g);
  CHECK_FALSE(rep.pre_simple);
  REQUIRE(rep.duplicate.has_value());
  CHECK(rep.duplicate->src == 0);
  CHECK(rep.duplicate->dst == 1);
  CHECK(rep.duplicate->label.residues == std::vector<std::int64_t>{1});

  // Third voltage graph of the two-vertex family: loops labeled 1 on both
  // vertices plus double edges labeled 0 and 1 in both directions.
  ClassicalVoltageGraph third{{"v0", "v1"},
                              FiniteAbelianGroup({2}),
                              {LabeledEdge{0, 0, {{1}}},
                               LabeledEdge{1, 1, {{1}}},
                               LabeledEdge{0, 1, {{0}}},
                               LabeledEdge{1, 0, {{0}}},
                               LabeledEdge{0, 1, {{1}}},
                               LabeledEdge{1, 0, {{1}}}}};
  CHECK(is_pre_simple(third).pre_simple);
}

TEST_CASE("symmetrize") {
  ClassicalVoltageGraph g{
      {"a", "b"}, FiniteAbelianGroup({2}), {LabeledEdge{0, 1, {{1}}}}};
  const ClassicalVoltageGraph s = symmetrize(g);
  REQUIRE(s.edges.size() == 2);
  CHECK(s.edges[1].src == 1);
  CHECK(s.edges[1].dst == 0);
  CHECK(s.edges[1].label.residues == std::vector<std::int64_t>{1});
  // Idempotent.
  const ClassicalVoltageGraph ss = symmetrize(s);
  CHECK(ss.edges.size() == 2);

  // Loop over Z_3 labeled 1 gains the reversed loop labeled 2.
  ClassicalVoltageGraph loop = z3_loop();
  const ClassicalVoltageGraph sloop = symmetrize(loop);
  REQUIRE(sloop.edges.size() == 2);
  CHECK(sloop.edges[1].label.residues == std::vector<std::int64_t>{2});

  // Already-symmetric graphs are unchanged.
  CHECK(symmetrize(sloop).edges.size() == 2);
}

TEST_CASE("derived graph of the Z3 loop is the directed 3-cycle") {
  const ClassicalDigraph derived = classical_derived_graph(z3_loop());
  REQUIRE(derived.size() == 3);
  CHECK(derived.edge_count() == 3);
  CHECK(derived.has_edge(0, 1));
  CHECK(derived.has_edge(1, 2));
  CHECK(derived.has_edge(2, 0));
}

TEST_CASE("derived graph structure") {
  // Empty edge set: empty graph on V x G.
  const ClassicalVoltageGraph empty{
      {"a", "b"}, FiniteAbelianGroup({3}), {}};
  const ClassicalDigraph de = classical_derived_graph(empty);
  CHECK(de.size() == 6);
  CHECK(de.edge_count() == 0);

  // Edge count is |E| * |G|; out-degrees match the voltage graph.
  const ClassicalVoltageGraph pv = symmetrize(petersen_voltage());
  const ClassicalDigraph dp = classical_derived_graph(pv);
  CHECK(dp.edge_count() == pv.edges.size() * 5);

  // Non-pre-simple input is rejected with the duplicate named.
  ClassicalVoltageGraph dup = z3_loop();
  dup.edges.push_back(dup.edges[0]);
  CHECK_THROWS_WITH_AS(classical_derived_graph(dup),
                       doctest::Contains("not pre-simple"), Error);
  // The multigraph route still produces the edge multiset.
  CHECK(classical_derived_multigraph(dup).size() == 6);
}

TEST_CASE("symmetrized Petersen voltage graph derives the Petersen graph") {
  const ClassicalVoltageGraph pv = symmetrize(petersen_voltage());
  const ClassicalDigraph derived = classical_derived_graph(pv);
  REQUIRE(derived.size() == 10);

  ClassicalDigraph pete = ClassicalDigraph::empty(
      {"o0", "o1", "o2", "o3", "o4", "i0", "i1", "i2", "i3", "i4"});
  auto both = [&](std::size_t a, std::size_t b) {
    pete.add_edge(a, b);
    pete.add_edge(b, a);
  };
  for (std::size_t v = 0; v < 5; ++v) {
    both(v, (v + 1) % 5);
    both(5 + v, 5 + (v + 2) % 5);
    both(v, 5 + v);
  }
  CHECK(digraph_isomorphic(derived, pete).has_value());
}

TEST_CASE("dual action validation") {
  const FiniteAbelianGroup z2({2});
  const auto c2 = make_classical_set(2);
  const DualAction triv = trivial_dual_action(c2, z2);
  CHECK(verify_dual_action(triv, 1e-9).pass(1e-9));

  const DualAction swap = permutation_dual_action(c2, z2, {{0, 1}, {1, 0}});
  CHECK(verify_dual_action(swap, 1e-9).pass(1e-9));

  // A non-homomorphism: Z_2 acting by a 3-cycle on three points.
  const auto c3 = make_classical_set(3);
  const DualAction bad =
      permutation_dual_action(c3, z2, {{0, 1, 2}, {1, 2, 0}});
  const CheckReport rep = verify_dual_action(bad, 1e-9);
  CHECK_FALSE(rep.pass(1e-9));
  CHECK(rep.find("homomorphism")->residual > 0.5);
}

TEST_CASE("voltage quantum graph validation") {
  const FiniteAbelianGroup z2({2});
  const auto c2 = make_classical_set(2);
  const DualAction swap = permutation_dual_action(c2, z2, {{0, 1}, {1, 0}});

  // Swap-symmetric components pass.
  Matrix a0(2, 2), a1(2, 2);
  a0.at(0, 1) = a0.at(1, 0) = Complex(1.0, 0.0);
  a1.at(0, 0) = a1.at(1, 1) = Complex(1.0, 0.0);
  CHECK_NOTHROW(make_voltage_quantum_graph(c2, z2, swap, {a0, a1}, 1e-9));

  // diag(1, 0) does not commute with the swap.
  Matrix bad(2, 2);
  bad.at(0, 0) = Complex(1.0, 0.0);
  const VoltageQuantumGraph vqg{c2, z2, swap, {Matrix(2, 2), bad}};
  const CheckReport rep = verify_voltage_quantum_graph(vqg, 1e-9);
  CHECK(rep.find("action_commutation")->residual == doctest::Approx(1.0));
  CHECK_THROWS_AS(
      make_voltage_quantum_graph(c2, z2, swap, {Matrix(2, 2), bad}, 1e-9),
      Error);

  // Any family of adjacencies is valid under the trivial action.
  CHECK_NOTHROW(make_voltage_quantum_graph(
      c2, z2, trivial_dual_action(c2, z2), {Matrix(2, 2), bad}, 1e-9));
}

TEST_CASE("classical voltage graphs as voltage quantum graphs") {
  // Loop labeled 1 over Z_3 on one vertex.
  const VoltageQuantumGraph vqg = classical_to_voltage_quantum(z3_loop());
  REQUIRE(vqg.components.size() == 3);
  CHECK(vqg.components[0].max_abs() == 0.0);
  CHECK(max_abs_diff(vqg.components[1], Matrix::identity(1)) == 0.0);
  CHECK(vqg.components[2].max_abs() == 0.0);

  // Third two-vertex graph: component 0 is the antidiagonal, component 1
  // is all-ones.
  ClassicalVoltageGraph third{{"v0", "v1"},
                              FiniteAbelianGroup({2}),
                              {LabeledEdge{0, 0, {{1}}},
                               LabeledEdge{1, 1, {{1}}},
                               LabeledEdge{0, 1, {{0}}},
                               LabeledEdge{1, 0, {{0}}},
                               LabeledEdge{0, 1, {{1}}},
                               LabeledEdge{1, 0, {{1}}}}};
  const VoltageQuantumGraph tq = classical_to_voltage_quantum(third);
  Matrix want0(2, 2), want1(2, 2);
  want0.at(0, 1) = want0.at(1, 0) = Complex(1.0, 0.0);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) want1.at(r, c) = Complex(1.0, 0.0);
  CHECK(max_abs_diff(tq.components[0], want0) == 0.0);
  CHECK(max_abs_diff(tq.components[1], want1) == 0.0);

  // Summing the components reproduces the label-collapsed adjacency and,
  // after symmetrization, transposing a component gives the inverse label.
  const ClassicalVoltageGraph pv = symmetrize(petersen_voltage());
  const VoltageQuantumGraph pq = classical_to_voltage_quantum(pv);
  for (std::size_t gi = 0; gi < 5; ++gi) {
    const std::size_t inv = pv.group.index_of(
        pv.group.inverse(pv.group.element_at(gi)));
    CHECK(max_abs_diff(pq.components[gi].transpose(), pq.components[inv]) ==
          0.0);
  }
}
