// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qvolt/qiso.hpp"
#include "qvolt/reconstruct.hpp"

namespace qvolt::io {

using nlohmann::json;

// Complex numbers are always serialized as [re, im]; matrices as arrays of
// rows. A matrix encodes a linear map in basis coordinates: entry (r, c) is
// the coefficient of basis element r in the image of basis element c.

json complex_to_json(const Complex& z);
Complex complex_from_json(const json& j);
json vector_to_json(const CVec& v);
CVec vector_from_json(const json& j);
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json group_to_json(const FiniteAbelianGroup& g);
FiniteAbelianGroup group_from_json(const json& j);
GroupElement element_from_json(const json& j);
json element_to_json(const GroupElement& g);

/// {"kind":"classical","size":n} | {"kind":"tracial_blocks","blocks":[..]} |
/// {"kind":"structure_constants","dim":d,"mult":[[[..]]],"star":[[..]],
///  "unit":[..],"psi":[..]}  (mult[i][j][k] is the b_k coefficient of
/// b_i b_j; star column i holds the coordinates of b_i^*).
QuantumSetPtr qset_from_json(const json& j, double tol);

ClassicalDigraph digraph_from_json(const json& j);
json digraph_to_json(const ClassicalDigraph& dg);
std::string digraph_to_dot(const ClassicalDigraph& dg);

ClassicalVoltageGraph voltage_graph_from_json(const json& j);
json voltage_graph_to_json(const ClassicalVoltageGraph& cvg);
std::string voltage_graph_to_dot(const ClassicalVoltageGraph& cvg);

/// {"base": <qset>, "group": {..}, "action": {"kind":"trivial"} |
/// {"kind":"matrices","entries":[{"character":[..],"matrix":[[..]]}]},
/// "components":[{"label":[..],"matrix":[[..]]}]}  (components without an
/// entry default to zero).
VoltageQuantumGraph vqg_from_json(const json& j, double tol);

struct TwinInput {
  ClassicalDigraph graph;
  FiniteAbelianGroup group;
  /// Per group element, expanded from the per-generator arrays in the file.
  std::vector<std::vector<std::size_t>> free_action;
  /// Per character.
  std::vector<std::vector<std::size_t>> dual_action;
};

/// {"graph": <digraph>, "group": {..},
///  "free_action": [[..] per cyclic generator],
///  "dual_action": [{"character":[..],"perm":[..]}]}
TwinInput twin_input_from_json(const json& j);

/// {"qset": <qset>, "adjacency": [[..]], "group": {..},
///  "alpha": [[[..]] per cyclic generator],
///  "u": [{"character":[..],"vector":[..]}]}
GraphAction reconstruct_input_from_json(const json& j, double tol);

json check_report_to_json(const CheckReport& report, double tol);

/// FNV-1a (64-bit) digest of the raw bytes, as a hex string.
std::string digest_of(const std::string& bytes);

std::string read_file(const std::string& path);

}  // namespace qvolt::io
