// Copyright 2026 The Unlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UNLEARN_JSON_IO_HPP
#define UNLEARN_JSON_IO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unlearn/measurement_tree.hpp"
#include "unlearn/povm.hpp"
#include "unlearn/recovery.hpp"
#include "unlearn/teleport.hpp"

// Interchange formats.
//
// Operator set:
//   {"dim": d, "kraus": [{"label": "k0", "matrix": [[[re, im], ...], ...]}, ...]}
// Matrices are row-major; a bare number is accepted for a real entry.
//
// Tree document: an operator set whose "kraus" list holds every branch
// operator, plus
//   "tree": {"path": [], "kraus": null, "children": [
//             {"path": [0], "kraus": "k0", "children": [...]}, ...]}
// Child records name their branch operator by label; cumulative operators are
// recomputed on load.
namespace unlearn::io {

using Json = nlohmann::json;

Json to_json(const ComplexMatrix& m);
/// Throws ParseError on a malformed matrix.
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const Povm& p);
Povm operator_set_from_json(const Json& j);

Json tree_to_json(const TreeNode& root);
TreeNode tree_from_json(const Json& j);

/// Either an operator set or a tree document.
struct InputDocument {
  std::optional<Povm> operators;
  std::optional<TreeNode> tree;
};

/// Parses text as JSON and classifies it. Syntax errors raise ParseError with
/// the 1-based line and column of the offending byte.
InputDocument parse_document(std::string_view text);

/// Convenience for text that must be an operator set.
Povm parse_operator_set(std::string_view text);

Json to_json(const ValidationReport& r);
Json to_json(const TreeValidationReport& r);
Json to_json(const RecoveryPlan& plan);
Json to_json(const BoundReport& r);
Json to_json(const FilterTrace& trace);
Json to_json(const OracleReport& r);
Json to_json(const std::vector<LeafSummary>& leaves);
Json to_json(const std::vector<teleport::SweepRow>& rows);

/// 17 significant digits in %g style with '.' as decimal point, independent
/// of the C locale.
std::string format_number(double x);

/// Header "j,a_j,b_j,step_p,cumulative", one row per step.
std::string trace_to_csv(const FilterTrace& trace);

/// Header "theta,p_analytic,p_povm_bound,p_montecarlo,n_runs".
std::string sweep_to_csv(const std::vector<teleport::SweepRow>& rows);

}  // namespace unlearn::io

#endif  // UNLEARN_JSON_IO_HPP
