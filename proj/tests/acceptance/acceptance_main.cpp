// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: end-to-end checks of the full pipeline against golden
// matrices, the classical construction, and the structural identities.
// Prints one line per criterion and exits nonzero if any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qvolt/io.hpp"
#include "qvolt/qiso.hpp"
#include "qvolt/reconstruct.hpp"

using namespace qvolt;
using nlohmann::json;

namespace {

constexpr double kTol = 1e-9;

struct CriterionResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

std::vector<CriterionResult> g_results;

void run_criterion(const std::string& name, double budget_seconds,
                   const std::function<std::pair<bool, double>(std::string&)>& body) {
  CriterionResult r;
  r.name = name;
  r.budget_seconds = budget_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [pass, residual] = body(r.detail);
    r.pass = pass;
    r.max_residual = residual;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
    r.max_residual = std::numeric_limits<double>::infinity();
  }
  r.seconds = std::chrono::duration<double>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  if (r.seconds > r.budget_seconds) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  g_results.push_back(r);
  std::printf("[%s] %s (max residual %.2e, %.2f s / budget %.0f s)%s%s\n",
              r.pass ? "PASS" : "FAIL", r.name.c_str(), r.max_residual,
              r.seconds, r.budget_seconds, r.detail.empty() ? "" : " -- ",
              r.detail.c_str());
}

json run_cli(const std::string& args) {
  const std::string out_path = "acceptance_cli_out.json";
  const std::string cmd = std::string(QVOLT_CLI_PATH) + " " + args + " --output " +
                          out_path;
  const int code = std::system(cmd.c_str());
  if (code != 0) throw Error("cli command failed: " + cmd);
  return json::parse(io::read_file(out_path));
}

std::string fixture(const std::string& name) {
  return std::string(QVOLT_FIXTURE_DIR) + "/" + name;
}

Matrix golden_a() {
  CVec d{Complex(1, 0), Complex(-1, 0), Complex(-1, 0), Complex(1, 0)};
  return Matrix::diag(d);
}

Matrix golden_b() {
  Matrix m = golden_a();
  m.at(0, 3) = m.at(3, 0) = Complex(1.0, 0.0);
  m.at(1, 2) = m.at(2, 1) = Complex(-1.0, 0.0);
  return m;
}

Matrix golden_c() {
  Matrix m = golden_a();
  m.at(0, 3) = m.at(3, 0) = Complex(2.0, 0.0);
  return m;
}

double random_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// ---- random voltage quantum graph generator ------------------------------

struct GeneratedVqg {
  VoltageQuantumGraph vqg;
  std::string description;
};

std::vector<std::vector<std::size_t>> classical_action_perms(
    std::mt19937_64& rng, const FiniteAbelianGroup& group, std::size_t nv) {
  const std::size_t n = group.order();
  std::vector<std::vector<std::size_t>> perms(n);
  std::vector<std::size_t> id(nv);
  for (std::size_t v = 0; v < nv; ++v) id[v] = v;

  const bool cyclic = group.factor_count() == 1;
  const bool klein = group.factor_count() == 2 && n == 4;
  const int mode = static_cast<int>(rng() % 3);
  if (mode == 0 || (cyclic && n > nv) || (klein && nv < 4)) {
    for (auto& p : perms) p = id;
  } else if (cyclic) {
    // Rotate disjoint blocks of size |G|; leave the remainder fixed.
    const std::size_t rotated = (nv / n) * n;
    for (std::size_t k = 0; k < n; ++k) {
      perms[k] = id;
      for (std::size_t v = 0; v < rotated; ++v)
        perms[k][v] = (v / n) * n + (v % n + k) % n;
    }
  } else {
    // Klein four-group on the first four vertices.
    const std::vector<std::vector<std::size_t>> klein_table{
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    for (std::size_t k = 0; k < 4; ++k) {
      perms[k] = id;
      for (std::size_t v = 0; v < 4; ++v) perms[k][v] = klein_table[k][v];
    }
  }

  // Conjugate by a random relabeling for variety.
  std::vector<std::size_t> relabel = id;
  for (std::size_t i = nv; i > 1; --i)
    std::swap(relabel[i - 1], relabel[rng() % i]);
  for (auto& p : perms) {
    std::vector<std::size_t> q(nv);
    for (std::size_t v = 0; v < nv; ++v) q[relabel[v]] = relabel[p[v]];
    p = q;
  }
  return perms;
}

GeneratedVqg random_classical_vqg(std::mt19937_64& rng, std::size_t max_dim) {
  const std::vector<std::vector<std::int64_t>> shapes{{2}, {3}, {4}, {2, 2}};
  const FiniteAbelianGroup group(shapes[rng() % shapes.size()]);
  const std::size_t nv = 1 + rng() % max_dim;
  const auto perms = classical_action_perms(rng, group, nv);
  QuantumSetPtr base = make_classical_set(nv, kTol);
  DualAction action = permutation_dual_action(base, group, perms);

  std::vector<Matrix> components(group.order(), Matrix(nv, nv));
  for (std::size_t gi = 0; gi < group.order(); ++gi)
    for (std::size_t s = 0; s < nv; ++s)
      for (std::size_t t = 0; t < nv; ++t) {
        if (rng() % 3 != 0) continue;
        for (const auto& p : perms)
          components[gi].at(p[t], p[s]) = Complex(1.0, 0.0);
      }

  std::ostringstream os;
  os << "classical base dim " << nv << ", group order " << group.order();
  return {make_voltage_quantum_graph(base, group, std::move(action),
                                     std::move(components), kTol),
          os.str()};
}

// Quantum adjacency families on (M_2, 2Tr) commuting with the chosen action.
GeneratedVqg random_m2_vqg(std::mt19937_64& rng) {
  const auto m2 = make_tracial_matrix_set(2);
  const bool order_two = rng() % 2 == 0;
  const FiniteAbelianGroup group(order_two ? std::vector<std::int64_t>{2}
                                           : std::vector<std::int64_t>{4});

  std::vector<Matrix> maps{Matrix::identity(4)};
  if (order_two) {
    // Conjugation by the symmetry flipping both indices.
    Matrix ad(4, 4);
    ad.at(3, 0) = ad.at(0, 3) = Complex(1.0, 0.0);
    ad.at(2, 1) = ad.at(1, 2) = Complex(1.0, 0.0);
    maps.push_back(ad);
  } else {
    // Conjugation by diag(1, i): order four, fixes the diagonal units.
    Matrix ad(4, 4);
    ad.at(0, 0) = ad.at(3, 3) = Complex(1.0, 0.0);
    ad.at(1, 1) = Complex(0.0, -1.0);
    ad.at(2, 2) = Complex(0.0, 1.0);
    Matrix cur = ad;
    for (int k = 1; k < 4; ++k) {
      maps.push_back(cur);
      cur = cur * ad;
    }
  }
  DualAction action{m2, group, maps};

  Matrix p3 = golden_a();
  Matrix complete(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    complete.at(0, i) = m2->algebra().psi[i];
    complete.at(3, i) = m2->algebra().psi[i];
  }
  std::vector<Matrix> family{Matrix(4, 4), Matrix::identity(4), p3, complete};
  if (order_two) {
    family.push_back(golden_b());
    family.push_back(golden_c());
  }
  std::vector<Matrix> components;
  for (std::size_t gi = 0; gi < group.order(); ++gi)
    components.push_back(family[rng() % family.size()]);
  std::ostringstream os;
  os << "base (M_2, 2Tr), group order " << group.order();
  return {make_voltage_quantum_graph(m2, group, std::move(action),
                                     std::move(components), kTol),
          os.str()};
}

GeneratedVqg random_vqg(std::mt19937_64& rng, std::size_t max_dim,
                        bool allow_quantum_base) {
  if (allow_quantum_base && max_dim >= 4 && rng() % 4 == 0)
    return random_m2_vqg(rng);
  return random_classical_vqg(rng, max_dim);
}

VoltageQuantumGraph swap_family(int which) {
  const FiniteAbelianGroup z2({2});
  const auto base = make_classical_set(2, kTol);
  const DualAction swap = permutation_dual_action(base, z2, {{0, 1}, {1, 0}});
  Matrix zero(2, 2), id = Matrix::identity(2), ones(2, 2), anti(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) ones.at(r, c) = Complex(1.0, 0.0);
  anti.at(0, 1) = anti.at(1, 0) = Complex(1.0, 0.0);
  switch (which) {
    case 0:
      return make_voltage_quantum_graph(base, z2, swap, {zero, id}, kTol);
    case 1:
      return make_voltage_quantum_graph(base, z2, swap, {zero, ones}, kTol);
    default:
      return make_voltage_quantum_graph(base, z2, swap, {anti, ones}, kTol);
  }
}

// ---- criteria -------------------------------------------------------------

std::pair<bool, double> golden_derived_matrices(std::string& detail) {
  const Matrix p = z2_swap_generator_assignment();
  const std::vector<std::pair<std::string, Matrix>> cases{
      {"two_vertex_loops_z2.json", golden_a()},
      {"two_vertex_loops_crossings_z2.json", golden_b()},
      {"two_vertex_three_edges_z2.json", golden_c()}};
  double worst = 0.0;
  for (const auto& [file, want] : cases) {
    const json out = run_cli("derive-quantum " + fixture(file));
    if (out.at("verdict") != "pass") {
      detail = file + " verdict not pass";
      return {false, 1.0};
    }
    const Matrix adjacency = io::matrix_from_json(out.at("adjacency"));
    const Matrix in_m2 = p * adjacency * p.transpose();
    worst = std::max(worst, max_abs_diff(in_m2, want));
  }
  return {worst < kTol, worst};
}

std::pair<bool, double> golden_x_maps(std::string&) {
  const FiniteAbelianGroup z2({2});
  const auto base = make_classical_set(2, kTol);
  const DualAction swap = permutation_dual_action(base, z2, {{0, 1}, {1, 0}});
  const CrossedProductPtr cp = crossed_product(base, swap, kTol);
  const Matrix p = z2_swap_generator_assignment();

  Matrix x0_want(4, 4), x1_want(4, 4);
  const double e0[4][4] = {{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0},
                           {1, 0, 0, 1}};
  const double e1[4][4] = {{1, 0, 0, 1}, {0, -1, -1, 0}, {0, -1, -1, 0},
                           {1, 0, 0, 1}};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      x0_want.at(r, c) = Complex(e0[r][c], 0.0);
      x1_want.at(r, c) = Complex(e1[r][c], 0.0);
    }
  const double r0 =
      max_abs_diff(p * x_map_matrix(*cp, 0) * p.transpose(), x0_want);
  const double r1 =
      max_abs_diff(p * x_map_matrix(*cp, 1) * p.transpose(), x1_want);
  const double worst = std::max(r0, r1);
  return {worst < kTol, worst};
}

std::pair<bool, double> crossed_is_m2(std::string& detail) {
  const FiniteAbelianGroup z2({2});
  const auto base = make_classical_set(2, kTol);
  const DualAction swap = permutation_dual_action(base, z2, {{0, 1}, {1, 0}});
  const CrossedProductPtr cp = crossed_product(base, swap, kTol);

  const BlockDecomposition dec = wedderburn_decompose(*cp->qset, kTol, 1);
  if (dec.blocks.size() != 1 || dec.blocks[0].size != 2) {
    detail = "unexpected block structure";
    return {false, 1.0};
  }
  double worst = dec.report.max_residual();
  worst = std::max(worst, max_abs_diff(dec.blocks[0].weight,
                                       Matrix::identity(2) * 2.0));
  // Direct isomorphism of quantum sets onto (M_2, 2Tr).
  const auto m2 = make_tracial_matrix_set(2, kTol);
  worst = std::max(
      worst, verify_qset_isomorphism(z2_swap_generator_assignment(), *cp->qset,
                                     *m2, kTol)
                 .max_residual());
  return {worst < kTol, worst};
}

// Derived adjacency transported to the classical coordinates on V x G.
Matrix derived_in_classical_coords(const DerivedQuantumGraph& d) {
  const Matrix ident = classical_crossed_identification(*d.crossed);
  return ident * d.adjacency.matrix * inverse(ident);
}

double integer_match(const Matrix& got, const ClassicalDigraph& want) {
  return max_abs_diff(got, want.adjacency_map());
}

std::pair<bool, double> classical_limit(std::string& detail) {
  double worst = 0.0;
  std::size_t slot_cases = 0;
  std::size_t subset_cases = 0;

  // Exhaustive per-slot check: every single-edge voltage graph, all
  // |V| <= 3, |G| in {2, 3, 4}. The derived adjacency is linear in the
  // component family and classical derived edge sets of distinct slots are
  // disjoint, so together with the sampled subsets below this covers every
  // pre-simple voltage graph on these vertex/group sizes.
  std::mt19937_64 rng(1234);
  for (std::size_t nv = 1; nv <= 3; ++nv) {
    for (const std::int64_t order : {2, 3, 4}) {
      const FiniteAbelianGroup group({order});
      std::vector<std::string> labels;
      for (std::size_t v = 0; v < nv; ++v)
        labels.push_back("v" + std::to_string(v));

      std::vector<LabeledEdge> slots;
      for (std::size_t s = 0; s < nv; ++s)
        for (std::size_t t = 0; t < nv; ++t)
          for (std::int64_t g = 0; g < order; ++g)
            slots.push_back(LabeledEdge{s, t, {{g}}});

      for (const auto& slot : slots) {
        const ClassicalVoltageGraph cvg{labels, group, {slot}};
        const DerivedQuantumGraph d =
            derived_quantum_graph(classical_to_voltage_quantum(cvg, kTol), kTol);
        worst = std::max(worst,
                         integer_match(derived_in_classical_coords(d),
                                       classical_derived_graph(cvg)));
        ++slot_cases;
      }

      // Sampled subsets plus the full slot set, through the full pipeline.
      for (int rep = 0; rep < 12; ++rep) {
        ClassicalVoltageGraph cvg{labels, group, {}};
        for (const auto& slot : slots)
          if (rep == 0 || rng() % 2 == 0) cvg.edges.push_back(slot);
        const DerivedQuantumGraph d =
            derived_quantum_graph(classical_to_voltage_quantum(cvg, kTol), kTol);
        worst = std::max(worst,
                         integer_match(derived_in_classical_coords(d),
                                       classical_derived_graph(cvg)));
        ++subset_cases;
      }
    }
  }

  // 200 seeded random pre-simple voltage graphs with |V| <= 5.
  std::mt19937_64 rng2(777);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t nv = 1 + rng2() % 5;
    const FiniteAbelianGroup group({static_cast<std::int64_t>(2 + rng2() % 3)});
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < nv; ++v)
      labels.push_back("v" + std::to_string(v));
    ClassicalVoltageGraph cvg{labels, group, {}};
    for (std::size_t s = 0; s < nv; ++s)
      for (std::size_t t = 0; t < nv; ++t)
        for (std::size_t g = 0; g < group.order(); ++g)
          if (rng2() % 3 == 0)
            cvg.edges.push_back(
                LabeledEdge{s, t, {{static_cast<std::int64_t>(g)}}});
    const DerivedQuantumGraph d =
        derived_quantum_graph(classical_to_voltage_quantum(cvg, kTol), kTol);
    worst = std::max(worst, integer_match(derived_in_classical_coords(d),
                                          classical_derived_graph(cvg)));
  }

  std::ostringstream os;
  os << slot_cases << " single-edge cases, " << subset_cases
     << " sampled subsets, 200 random graphs";
  detail = os.str();
  return {worst < kTol, worst};
}

std::pair<bool, double> figure_examples(std::string& detail) {
  // Loop over Z_3: the derived graph is exactly the directed 3-cycle.
  const json loop_out =
      run_cli("derive-classical " + fixture("z3_loop_voltage.json"));
  const ClassicalDigraph loop = io::digraph_from_json(loop_out.at("derived"));
  ClassicalDigraph want = ClassicalDigraph::empty(loop.vertices);
  want.add_edge(0, 1);
  want.add_edge(1, 2);
  want.add_edge(2, 0);
  if (!(loop == want)) {
    detail = "derived graph of the Z3 loop is not the directed 3-cycle";
    return {false, 1.0};
  }

  // Two-vertex voltage graph over Z_5: derived graph isomorphic to Petersen.
  const json pete_out =
      run_cli("derive-classical " + fixture("petersen_voltage.json"));
  const ClassicalDigraph derived =
      io::digraph_from_json(pete_out.at("derived"));
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
  if (!digraph_isomorphic(derived, pete).has_value()) {
    detail = "derived graph is not isomorphic to the Petersen graph";
    return {false, 1.0};
  }
  return {true, 0.0};
}

std::pair<bool, double> certificates(std::string& detail) {
  double worst = 0.0;
  auto check_pair = [&](const VoltageQuantumGraph& vqg) {
    const DerivedPair pair = certify_derived_pair(vqg, kTol);
    worst = std::max(worst, pair.certificate.report.max_residual());
    worst = std::max(worst, pair.intertwining_residual);
  };

  for (int which = 0; which < 3; ++which) check_pair(swap_family(which));

  // Cyclic shift of order three on three points.
  {
    const FiniteAbelianGroup z3({3});
    const auto c3 = make_classical_set(3, kTol);
    const DualAction shift =
        permutation_dual_action(c3, z3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    Matrix c1(3, 3);
    for (std::size_t v = 0; v < 3; ++v) c1.at((v + 1) % 3, v) = Complex(1, 0);
    check_pair(make_voltage_quantum_graph(c3, z3, shift,
                                          {Matrix(3, 3), c1, Matrix(3, 3)},
                                          kTol));
  }

  std::mt19937_64 rng(31337);
  for (int rep = 0; rep < 50; ++rep)
    check_pair(random_vqg(rng, 4, /*allow_quantum_base=*/true).vqg);

  detail = "54 certified pairs";
  return {worst < kTol, worst};
}

std::pair<bool, double> reconstruction_roundtrip(std::string& detail) {
  double worst = 0.0;
  std::mt19937_64 rng(9090);
  for (int rep = 0; rep < 100; ++rep) {
    const GeneratedVqg gen = random_vqg(rng, 3, /*allow_quantum_base=*/false);
    const DerivedQuantumGraph d = derived_quantum_graph(gen.vqg, kTol);
    const GraphAction ga = dual_graph_action(d.crossed, d.adjacency);
    const FixedPointData fpd = fixed_point_data(ga, kTol);
    const ReconstructionResult rec = reconstruct_voltage(ga, fpd, kTol);
    worst = std::max(worst, rec.report.max_residual());

    // Components transported through the embedding of the base at the
    // trivial character must match the originals.
    const std::size_t nv = gen.vqg.base->dim();
    Matrix embed(d.crossed->dim(), nv);
    for (std::size_t i = 0; i < nv; ++i)
      embed.at(d.crossed->index(0, i), i) = Complex(1.0, 0.0);
    const Matrix transport = fpd.coord_map * embed;
    for (std::size_t gi = 0; gi < gen.vqg.group.order(); ++gi)
      worst = std::max(worst,
                       max_abs_diff(rec.vqg.components[gi] * transport,
                                    transport * gen.vqg.components[gi]));
  }
  detail = "100 seeded roundtrips";
  return {worst < kTol, worst};
}

std::pair<bool, double> structural_invariants(std::string& detail) {
  double worst = 0.0;

  // Representative quantum sets of every constructor.
  std::vector<QuantumSetPtr> sets;
  for (std::size_t n = 1; n <= 5; ++n) sets.push_back(make_classical_set(n, kTol));
  sets.push_back(make_tracial_matrix_set(2, kTol));
  sets.push_back(make_tracial_blocks_set({2, 1}, kTol));
  for (const auto& orders :
       {std::vector<std::int64_t>{2}, {3}, {4}, {2, 2}})
    sets.push_back(group_algebra_set(FiniteAbelianGroup(orders), kTol).qset);
  sets.push_back(tensor_product_qset(*make_classical_set(2, kTol),
                                     *make_tracial_matrix_set(2, kTol), kTol));

  // Crossed products over assorted bases and actions.
  std::vector<CrossedProductPtr> crossed;
  {
    const FiniteAbelianGroup z2({2});
    const auto c2 = make_classical_set(2, kTol);
    crossed.push_back(crossed_product(
        c2, permutation_dual_action(c2, z2, {{0, 1}, {1, 0}}), kTol));
    crossed.push_back(crossed_product(c2, trivial_dual_action(c2, z2), kTol));

    const FiniteAbelianGroup z3({3});
    const auto c3 = make_classical_set(3, kTol);
    crossed.push_back(crossed_product(
        c3, permutation_dual_action(c3, z3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}),
        kTol));

    const FiniteAbelianGroup z4({4});
    const auto c4 = make_classical_set(4, kTol);
    crossed.push_back(crossed_product(
        c4, permutation_dual_action(
                c4, z4, {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1},
                         {3, 0, 1, 2}}),
        kTol));

    const FiniteAbelianGroup klein({2, 2});
    crossed.push_back(crossed_product(
        c4, permutation_dual_action(c4, klein,
                                    {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1},
                                     {3, 2, 1, 0}}),
        kTol));

    const auto m2 = make_tracial_matrix_set(2, kTol);
    Matrix ad(4, 4);
    ad.at(3, 0) = ad.at(0, 3) = Complex(1.0, 0.0);
    ad.at(2, 1) = ad.at(1, 2) = Complex(1.0, 0.0);
    crossed.push_back(crossed_product(
        m2, DualAction{m2, z2, {Matrix::identity(4), ad}}, kTol));
  }
  for (const auto& cp : crossed) sets.push_back(cp->qset);

  for (const auto& qs : sets) {
    const QuantumSetReport rep = verify_quantum_set(qs->algebra(), kTol);
    worst = std::max({worst, rep.mm_star_residual, rep.counit_residual,
                      rep.coassoc_residual});
  }

  for (const auto& cp : crossed) {
    worst = std::max(worst,
                     crossed_product_structure_report(*cp, kTol).max_residual());
    const auto& qs = *cp->qset;
    const auto& group = cp->action.group;
    std::vector<Matrix> xs;
    for (std::size_t gi = 0; gi < group.order(); ++gi)
      xs.push_back(x_map_matrix(*cp, gi));
    for (std::size_t gi = 0; gi < group.order(); ++gi) {
      const std::size_t gi_inv =
          group.index_of(group.inverse(group.element_at(gi)));
      worst = std::max(worst, max_abs_diff(qs.adjoint_map(xs[gi]), xs[gi_inv]));
      for (std::size_t hi = 0; hi < group.order(); ++hi) {
        const Matrix prod = schur_product_matrix(qs, xs[gi], xs[hi]);
        worst = std::max(worst, gi == hi ? max_abs_diff(prod, xs[gi])
                                         : prod.max_abs());
      }
    }
    worst = std::max(
        worst,
        max_abs_diff(Matrix::kron(cp->expectation, cp->expectation) *
                         qs.comult(),
                     cp->base->comult() * cp->expectation));
  }

  std::ostringstream os;
  os << sets.size() << " quantum sets, " << crossed.size()
     << " crossed products";
  detail = os.str();
  return {worst < kTol, worst};
}

std::pair<bool, double> property_transfer_suite(std::string& detail) {
  double worst = 0.0;
  bool consistent = true;

  auto check = [&](const VoltageQuantumGraph& vqg) {
    const PropertyTransfer t = property_transfer_report(vqg, kTol);
    consistent = consistent && t.consistent(kTol);
    if (t.voltage_regularity < kTol)
      worst = std::max(worst, std::abs(t.voltage_degree - t.derived_degree));
  };

  for (int which = 0; which < 3; ++which) check(swap_family(which));
  std::mt19937_64 rng(5150);
  for (int rep = 0; rep < 50; ++rep)
    check(random_vqg(rng, 4, /*allow_quantum_base=*/true).vqg);

  for (int b0 = 0; b0 < 2; ++b0)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        worst = std::max(worst, parametric_z2_derived(b0, a1, b1, kTol).residual);

  detail = "53 transfer instances, 8 parametric triples";
  if (!consistent) detail += "; transfer implication violated";
  return {consistent && worst < kTol, worst};
}

}  // namespace

int main() {
  std::printf("acceptance suite (tolerance %.1e)\n", kTol);
  run_criterion("1. golden derived matrices on (M_2, 2Tr) via the CLI", 1.0,
                golden_derived_matrices);
  run_criterion("2. golden X_0 and X_1 matrices", 1.0, golden_x_maps);
  run_criterion("3. C^2 crossed by the swap is (M_2, 2Tr)", 1.0, crossed_is_m2);
  run_criterion("4. classical limit equals the classical derived graph", 30.0,
                classical_limit);
  run_criterion("5. figure examples: Z3 loop and the Petersen voltage graph",
                5.0, figure_examples);
  run_criterion("6. quantum isomorphism certificates", 60.0, certificates);
  run_criterion("7. reconstruction roundtrip", 60.0, reconstruction_roundtrip);
  run_criterion("8. structural invariant suite", 30.0, structural_invariants);
  run_criterion("9. property transfer and the parametric two-vertex family",
                30.0, property_transfer_suite);

  int passed = 0;
  for (const auto& r : g_results) passed += r.pass ? 1 : 0;
  std::printf("summary: %d/%zu criteria passed\n", passed, g_results.size());
  return passed == static_cast<int>(g_results.size()) ? 0 : 1;
}
