// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: voltage graph pipelines with JSON input/output.
// Subcommands: derive-classical, derive-quantum, twin, reconstruct, verify,
// decompose. Every command emits a deterministic report and exits nonzero
// when any residual fails the tolerance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qvolt/io.hpp"

namespace {

using nlohmann::json;
using namespace qvolt;

struct CommonOpts {
  std::string input;
  std::string output;
  std::string format = "json";
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("input", opts.input, "input JSON file")->required();
  cmd->add_option("--output", opts.output, "write the report here instead of stdout");
  cmd->add_option("--format", opts.format, "output format: json or dot")
      ->check(CLI::IsMember({"json", "dot"}));
  cmd->add_option("--tol", opts.tol, "residual tolerance (default 1e-9)");
  cmd->add_option("--seed", opts.seed, "seed for randomized algorithms");
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw Error("cannot write to " + opts.output);
    out << text;
  }
}

json base_report(const char* command, const CommonOpts& opts,
                 const std::string& raw_input) {
  return json{{"command", command},
              {"inputs_digest", io::digest_of(raw_input)},
              {"tolerance", opts.tol},
              {"seed", opts.seed}};
}

// Returns the process exit code: 0 on pass, 1 on failed residuals.
int finish(const CommonOpts& opts, json report, const CheckReport& checks) {
  const bool pass = checks.pass(opts.tol);
  report["checks"] = io::check_report_to_json(checks, opts.tol);
  report["verdict"] = pass ? "pass" : "fail";
  emit(opts, report.dump(2));
  return pass ? 0 : 1;
}

int run_derive_classical(const CommonOpts& opts, bool multigraph) {
  const std::string raw = io::read_file(opts.input);
  const ClassicalVoltageGraph cvg = io::voltage_graph_from_json(json::parse(raw));
  json report = base_report("derive-classical", opts, raw);
  const PreSimpleReport pre = is_pre_simple(cvg);
  report["pre_simple"] = pre.pre_simple;

  if (multigraph) {
    const auto labels = derived_vertex_labels(cvg);
    json edges = json::array();
    for (const auto& [src, dst] : classical_derived_multigraph(cvg))
      edges.push_back(json::array({labels[src], labels[dst]}));
    report["derived_multigraph"] =
        json{{"vertices", labels}, {"edges", edges}};
    emit(opts, report.dump(2));
    return 0;
  }

  const ClassicalDigraph derived = classical_derived_graph(cvg);
  if (opts.format == "dot") {
    emit(opts, io::digraph_to_dot(derived));
    return 0;
  }
  report["derived"] = io::digraph_to_json(derived);
  report["verdict"] = "pass";
  emit(opts, report.dump(2));
  return 0;
}

int run_derive_quantum(const CommonOpts& opts) {
  if (opts.format == "dot")
    throw Error("dot output is only available for classical digraphs");
  const std::string raw = io::read_file(opts.input);
  const VoltageQuantumGraph vqg = io::vqg_from_json(json::parse(raw), opts.tol);
  const DerivedQuantumGraph derived = derived_quantum_graph(vqg, opts.tol);

  CheckReport checks;
  checks.merge(verify_voltage_quantum_graph(vqg, opts.tol), "voltage.");
  checks.merge(crossed_product_structure_report(*derived.crossed, opts.tol),
               "crossed.");
  checks.merge(derived.report, "derived.");

  json report = base_report("derive-quantum", opts, raw);
  report["crossed_dim"] = derived.crossed->dim();
  report["basis_labels"] = derived.crossed->qset->algebra().basis_labels;
  report["adjacency"] = io::matrix_to_json(derived.adjacency.matrix);
  const PropertyTransfer transfer = property_transfer_report(vqg, opts.tol);
  report["properties"] = json{
      {"loopfree_residual", transfer.derived_loopfree},
      {"undirected_residual", transfer.derived_undirected},
      {"regularity_residual", transfer.derived_regularity},
      {"degree", transfer.derived_degree}};
  return finish(opts, std::move(report), checks);
}

int run_twin(const CommonOpts& opts) {
  if (opts.format == "dot")
    throw Error("dot output is only available for classical digraphs");
  const std::string raw = io::read_file(opts.input);
  const io::TwinInput input = io::twin_input_from_json(json::parse(raw));
  const TwinResult twin = quantum_twin(input.graph, input.group,
                                       input.free_action, input.dual_action,
                                       opts.tol);

  CheckReport checks = twin.pair.certificate.report;
  checks.add("graph_intertwining", twin.pair.intertwining_residual);
  checks.add("classical_match", twin.classical_match_residual);

  json report = base_report("twin", opts, raw);
  report["quotient"] = io::voltage_graph_to_json(twin.quotient.quotient);
  report["twin_adjacency"] =
      io::matrix_to_json(twin.pair.crossed.adjacency.matrix);
  report["twin_basis_labels"] =
      twin.pair.crossed.crossed->qset->algebra().basis_labels;
  json blocks = json::array();
  for (std::size_t z = 0; z < twin.pair.certificate.hilbert_dim; ++z) {
    json row = json::array();
    for (std::size_t e = 0; e < twin.pair.certificate.hilbert_dim; ++e)
      row.push_back(io::matrix_to_json(twin.pair.certificate.rho[z][e]));
    blocks.push_back(row);
  }
  report["certificate"] = json{
      {"hilbert_dim", twin.pair.certificate.hilbert_dim},
      {"rho_blocks", blocks}};
  return finish(opts, std::move(report), checks);
}

int run_reconstruct(const CommonOpts& opts) {
  if (opts.format == "dot")
    throw Error("dot output is only available for classical digraphs");
  const std::string raw = io::read_file(opts.input);
  const GraphAction ga =
      io::reconstruct_input_from_json(json::parse(raw), opts.tol);

  CheckReport checks = verify_landstad(ga, opts.tol);
  json report = base_report("reconstruct", opts, raw);
  if (!checks.pass(opts.tol)) return finish(opts, std::move(report), checks);

  const FixedPointData fpd = fixed_point_data(ga, opts.tol);
  checks.merge(fpd.report, "fixed_point.");
  const ReconstructionResult rec = reconstruct_voltage(ga, fpd, opts.tol);
  checks.merge(rec.report, "reconstruction.");

  const auto elements = ga.group.enumerate();
  const auto characters = ga.group.enumerate_dual();
  json components = json::array();
  for (std::size_t gi = 0; gi < elements.size(); ++gi)
    components.push_back(
        json{{"label", elements[gi].residues},
             {"matrix", io::matrix_to_json(rec.vqg.components[gi])}});
  json dual = json::array();
  for (std::size_t c = 0; c < characters.size(); ++c)
    dual.push_back(json{{"character", characters[c].residues},
                        {"matrix", io::matrix_to_json(fpd.dual.maps[c])}});
  report["fixed_point_dim"] = fpd.fixed->dim();
  report["fixed_point_basis"] = io::matrix_to_json(fpd.basis);
  report["components"] = components;
  report["dual_action"] = dual;
  report["roundtrip"] =
      rec.report.find("roundtrip_adjacency")->residual < opts.tol ? "pass"
                                                                  : "fail";
  return finish(opts, std::move(report), checks);
}

int run_verify(const CommonOpts& opts) {
  const std::string raw = io::read_file(opts.input);
  const json j = json::parse(raw);
  json report = base_report("verify", opts, raw);
  CheckReport checks;

  if (j.contains("kind")) {
    QuantumSetPtr qs = io::qset_from_json(j, opts.tol);
    const QuantumSetReport rep = qs->report();
    checks.add("mm_star", rep.mm_star_residual);
    checks.add("counit", rep.counit_residual);
    checks.add("coassociativity", rep.coassoc_residual);
    report["kind"] = "quantum_set";
    report["gram_min_eigenvalue"] = rep.gram_min_eigenvalue;
  } else if (j.contains("base")) {
    const VoltageQuantumGraph vqg = io::vqg_from_json(j, opts.tol);
    checks.merge(verify_voltage_quantum_graph(vqg, opts.tol), "");
    report["kind"] = "voltage_quantum_graph";
  } else if (j.contains("group")) {
    const ClassicalVoltageGraph cvg = io::voltage_graph_from_json(j);
    const PreSimpleReport pre = is_pre_simple(cvg);
    checks.add("pre_simple", pre.pre_simple ? 0.0 : 1.0);
    report["kind"] = "voltage_graph";
  } else {
    const ClassicalDigraph dg = io::digraph_from_json(j);
    const QuantumAdjacency qa = classical_to_quantum(dg, opts.tol);
    checks.add("schur_idempotent", qa.schur_residual);
    checks.add("star_preserving", qa.star_residual);
    report["kind"] = "digraph";
  }
  return finish(opts, std::move(report), checks);
}

int run_decompose(const CommonOpts& opts) {
  const std::string raw = io::read_file(opts.input);
  QuantumSetPtr qs = io::qset_from_json(json::parse(raw), opts.tol);
  const BlockDecomposition dec = wedderburn_decompose(*qs, opts.tol, opts.seed);

  json report = base_report("decompose", opts, raw);
  json blocks = json::array();
  for (const auto& b : dec.blocks)
    blocks.push_back(
        json{{"size", b.size}, {"weight", io::matrix_to_json(b.weight)}});
  report["blocks"] = blocks;
  report["iso"] = io::matrix_to_json(dec.iso);
  return finish(opts, std::move(report), dec.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voltage quantum graphs: crossed products, derived graphs, "
               "quantum isomorphisms, and reconstruction"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool multigraph = false;

  CLI::App* derive_classical = app.add_subcommand(
      "derive-classical", "derived graph of a classical voltage graph");
  add_common(derive_classical, opts);
  derive_classical->add_flag("--multigraph", multigraph,
                             "emit the derived edge multiset even for "
                             "non-pre-simple inputs");

  add_common(app.add_subcommand(
                 "derive-quantum",
                 "derived quantum graph of a voltage quantum graph"),
             opts);
  add_common(app.add_subcommand(
                 "twin", "quantum twin of a classical graph with a free action"),
             opts);
  add_common(app.add_subcommand(
                 "reconstruct",
                 "recover voltage data from a quantum graph with an action"),
             opts);
  add_common(app.add_subcommand("verify", "residual report for an object"),
             opts);
  add_common(app.add_subcommand("decompose",
                                "block decomposition of a quantum set"),
             opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("derive-classical"))
      return run_derive_classical(opts, multigraph);
    if (app.got_subcommand("derive-quantum")) return run_derive_quantum(opts);
    if (app.got_subcommand("twin")) return run_twin(opts);
    if (app.got_subcommand("reconstruct")) return run_reconstruct(opts);
    if (app.got_subcommand("verify")) return run_verify(opts);
    if (app.got_subcommand("decompose")) return run_decompose(opts);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: invalid JSON: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
