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

#include "unlearn/json_io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <utility>

#include "unlearn/errors.hpp"

namespace unlearn::io {

namespace {

Json path_json(const TreePath& path) {
  Json j = Json::array();
  for (std::size_t x : path) {
    j.push_back(x);
  }
  return j;
}

Json numbers(const std::vector<double>& xs) {
  Json j = Json::array();
  for (double x : xs) {
    j.push_back(x);
  }
  return j;
}

Json witness_json(const std::optional<UnitaryWitness>& w) {
  if (!w) {
    return nullptr;
  }
  return Json{{"scale", w->scale}, {"unitary", to_json(w->unitary)}};
}

// Assigns each distinct branch operator a unique label.
class LabelTable {
 public:
  std::string intern(const KrausOperator& k) {
    std::string base = k.label().empty() ? "op" : k.label();
    std::string label = base;
    for (int n = 1;; ++n) {
      auto it = by_label_.find(label);
      if (it == by_label_.end()) {
        by_label_.emplace(label, k.matrix());
        order_.push_back({label, k.matrix()});
        return label;
      }
      if (it->second.rows() == k.matrix().rows() &&
          frobenius_distance(it->second, k.matrix()) == 0.0) {
        return label;
      }
      label = base + "#" + std::to_string(n);
    }
  }

  Json operators() const {
    Json ops = Json::array();
    for (const auto& [label, m] : order_) {
      ops.push_back({{"label", label}, {"matrix", to_json(m)}});
    }
    return ops;
  }

 private:
  std::map<std::string, ComplexMatrix> by_label_;
  std::vector<std::pair<std::string, ComplexMatrix>> order_;
};

Json node_json(const TreeNode& node, LabelTable& labels) {
  Json j{{"path", path_json(node.path())}};
  j["kraus"] = node.local_kraus() ? Json(labels.intern(*node.local_kraus())) : Json(nullptr);
  Json children = Json::array();
  for (const auto& child : node.children()) {
    children.push_back(node_json(child, labels));
  }
  j["children"] = std::move(children);
  return j;
}

TreeNode node_from_json(const Json& j, const TreePath& path, const KrausOperator& parent_cumulative,
                        const std::map<std::string, KrausOperator>& ops, bool is_root) {
  if (!j.is_object()) {
    throw ParseError("tree node must be an object");
  }
  if (j.contains("path")) {
    TreePath declared = j.at("path").get<TreePath>();
    if (declared != path) {
      throw ParseError("tree node path does not match its position");
    }
  }
  std::optional<KrausOperator> local;
  KrausOperator cumulative = parent_cumulative;
  const Json kraus = j.value("kraus", Json(nullptr));
  if (!kraus.is_null()) {
    const std::string label = kraus.get<std::string>();
    auto it = ops.find(label);
    if (it == ops.end()) {
      throw ParseError("tree references unknown operator '" + label + "'");
    }
    local = it->second;
    cumulative = KrausOperator(it->second.matrix() * parent_cumulative.matrix(), label);
  } else if (!is_root) {
    throw ParseError("non-root tree node needs a \"kraus\" label");
  }
  std::vector<TreeNode> children;
  if (j.contains("children")) {
    const Json& cs = j.at("children");
    if (!cs.is_array()) {
      throw ParseError("\"children\" must be an array");
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      TreePath child_path = path;
      child_path.push_back(i);
      children.push_back(node_from_json(cs[i], child_path, cumulative, ops, false));
    }
  }
  return TreeNode::assemble(path, std::move(local), std::move(cumulative), std::move(children));
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  // nlohmann reports the 1-based count of bytes read.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Runs a schema-level conversion, mapping library exceptions to ParseError.
template <typename F>
auto schema(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schema error: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("schema error: ") + e.what());
  } catch (const NumericError& e) {
    throw ParseError(std::string("schema error: ") + e.what());
  }
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  return schema([&] {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
      throw ParseError("matrix must be a non-empty array of non-empty rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const Json& row : j) {
      if (!row.is_array() || row.size() != cols) {
        throw ParseError("matrix rows must all have " + std::to_string(cols) + " entries");
      }
      for (const Json& z : row) {
        if (z.is_number()) {
          entries.emplace_back(z.get<double>(), 0.0);
        } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
          entries.emplace_back(z[0].get<double>(), z[1].get<double>());
        } else {
          throw ParseError("matrix entry must be a number or a [re, im] pair");
        }
      }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
  });
}

Json to_json(const Povm& p) {
  Json ops = Json::array();
  for (const auto& k : p.kraus_ops()) {
    ops.push_back({{"label", k.label()}, {"matrix", to_json(k.matrix())}});
  }
  return Json{{"dim", p.dim()}, {"kraus", std::move(ops)}};
}

Povm operator_set_from_json(const Json& j) {
  return schema([&] {
    if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array()) {
      throw ParseError("operator set needs a \"kraus\" array");
    }
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::vector<KrausOperator> ops;
    const Json& list = j.at("kraus");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Json& item = list[i];
      ComplexMatrix m = matrix_from_json(item.at("matrix"));
      if (m.rows() != dim || m.cols() != dim) {
        throw ParseError("operator " + std::to_string(i) + " is not " + std::to_string(dim) + "x" +
                         std::to_string(dim));
      }
      ops.emplace_back(std::move(m), item.value("label", "k" + std::to_string(i)));
    }
    return Povm(std::move(ops));
  });
}

Json tree_to_json(const TreeNode& root) {
  LabelTable labels;
  Json tree = node_json(root, labels);
  return Json{{"dim", root.dim()}, {"kraus", labels.operators()}, {"tree", std::move(tree)}};
}

TreeNode tree_from_json(const Json& j) {
  return schema([&] {
    if (!j.is_object() || !j.contains("tree")) {
      throw ParseError("tree document needs a \"tree\" record");
    }
    const std::size_t dim = j.at("dim").get<std::size_t>();
    std::map<std::string, KrausOperator> ops;
    if (j.contains("kraus") && !j.at("kraus").empty()) {
      const Povm declared = operator_set_from_json(j);
      for (const auto& k : declared.kraus_ops()) {
        ops.emplace(k.label(), k);
      }
    }
    return node_from_json(j.at("tree"), {}, KrausOperator(ComplexMatrix::identity(dim), "root"),
                          ops, true);
  });
}

InputDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    std::ostringstream msg;
    msg << "JSON syntax error at line " << line << ", column " << column << ": " << e.what();
    throw ParseError(msg.str(), line, column);
  }
  InputDocument doc;
  if (j.is_object() && j.contains("tree")) {
    doc.tree = tree_from_json(j);
  } else {
    doc.operators = operator_set_from_json(j);
  }
  return doc;
}

Povm parse_operator_set(std::string_view text) {
  InputDocument doc = parse_document(text);
  if (!doc.operators) {
    throw ParseError("expected an operator set, found a tree document");
  }
  return std::move(*doc.operators);
}

Json to_json(const ValidationReport& r) {
  Json elements = Json::array();
  for (const auto& e : r.elements) {
    elements.push_back({{"label", e.label},
                        {"psd", e.psd},
                        {"min_eigenvalue", e.min_eigenvalue},
                        {"max_eigenvalue", e.max_eigenvalue}});
  }
  return Json{{"kind", "operator-set"},
              {"passed", r.passed},
              {"tolerance", r.tolerance},
              {"completeness_residual", r.completeness_residual},
              {"elements", std::move(elements)}};
}

Json to_json(const TreeValidationReport& r) {
  Json nodes = Json::array();
  for (const auto& n : r.nodes) {
    nodes.push_back({{"path", path_json(n.path)},
                     {"sum_residual", n.sum_residual},
                     {"product_residual", n.product_residual}});
  }
  Json failing = Json::array();
  for (const auto& p : r.failing) {
    failing.push_back(path_json(p));
  }
  return Json{{"kind", "tree"},
              {"passed", r.passed},
              {"tolerance", r.tolerance},
              {"nodes", std::move(nodes)},
              {"failing", std::move(failing)}};
}

Json to_json(const RecoveryPlan& plan) {
  return Json{{"success_probability", plan.success_probability},
              {"success_kraus", to_json(plan.success_kraus.matrix())},
              {"failure_kraus", to_json(plan.failure_kraus.matrix())},
              {"cumulative_success", to_json(plan.cumulative_success)},
              {"residual_failure_kraus_singular_values",
               numbers(plan.residual_failure_kraus_singular_values)}};
}

Json to_json(const BoundReport& r) {
  return Json{{"per_outcome_min_prob", numbers(r.per_outcome_min_prob)},
              {"total_recoverable", r.total_recoverable},
              {"visibility", r.visibility}};
}

Json to_json(const FilterTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"j", s.index},
                     {"a", s.a},
                     {"b", s.b},
                     {"c", s.c},
                     {"d", s.d},
                     {"step_success_probability", s.step_success_probability},
                     {"mirror_success_probability", s.mirror_success_probability},
                     {"cumulative_success", s.cumulative_success}});
  }
  return Json{{"steps", std::move(steps)},
              {"cumulative_success", trace.cumulative_success},
              {"residual", {trace.residual.first, trace.residual.second}},
              {"iterations_used", trace.iterations_used},
              {"converged", trace.converged}};
}

Json to_json(const OracleReport& r) {
  return Json{{"trials", r.trials},
              {"feasible_trials", r.feasible_trials},
              {"max_observed", r.max_observed},
              {"bound", r.bound},
              {"bound_holds", r.bound_holds},
              {"grid_points", r.grid_points},
              {"grid_best_t", r.grid_best_t},
              {"grid_best_probability", r.grid_best_probability},
              {"grid_attains_bound", r.grid_attains_bound},
              {"grid_infeasible_beyond", r.grid_infeasible_beyond}};
}

Json to_json(const std::vector<LeafSummary>& leaves) {
  Json out = Json::array();
  for (const auto& l : leaves) {
    out.push_back({{"path", path_json(l.path)},
                   {"min_probability", l.min_probability},
                   {"max_probability", l.max_probability},
                   {"unitary_witness", witness_json(l.unitary_witness)},
                   {"nullspace_dim", l.nullspace_dim}});
  }
  return out;
}

Json to_json(const std::vector<teleport::SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"theta", r.theta},
                   {"p_analytic", r.p_analytic},
                   {"p_povm_bound", r.p_povm_bound},
                   {"p_montecarlo", r.p_montecarlo},
                   {"n_runs", r.n_runs}});
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

std::string trace_to_csv(const FilterTrace& trace) {
  std::string out = "j,a_j,b_j,step_p,cumulative\n";
  for (const auto& s : trace.steps) {
    out += std::to_string(s.index) + "," + format_number(s.a) + "," + format_number(s.b) + "," +
           format_number(s.step_success_probability) + "," + format_number(s.cumulative_success) +
           "\n";
  }
  return out;
}

std::string sweep_to_csv(const std::vector<teleport::SweepRow>& rows) {
  std::string out = "theta,p_analytic,p_povm_bound,p_montecarlo,n_runs\n";
  for (const auto& r : rows) {
    out += format_number(r.theta) + "," + format_number(r.p_analytic) + "," +
           format_number(r.p_povm_bound) + "," + format_number(r.p_montecarlo) + "," +
           std::to_string(r.n_runs) + "\n";
  }
  return out;
}

}  // namespace unlearn::io
