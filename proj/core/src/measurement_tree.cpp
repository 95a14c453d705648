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

#include "unlearn/measurement_tree.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "unlearn/errors.hpp"

namespace unlearn {

namespace {

std::string path_string(std::span<const std::size_t> path) {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    s += (i ? "," : "") + std::to_string(path[i]);
  }
  return s + "]";
}

void collect_leaves(const TreeNode& node, std::vector<const TreeNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const auto& child : node.children()) {
    collect_leaves(child, out);
  }
}

void validate_node(const TreeNode& node, double tol, TreeValidationReport& report) {
  if (node.is_leaf()) {
    return;
  }
  ComplexMatrix sum(node.dim(), node.dim());
  double product_residual = 0.0;
  for (const auto& child : node.children()) {
    sum = sum + child.cumulative_element();
    if (child.local_kraus()) {
      const ComplexMatrix expected = child.local_kraus()->matrix() * node.cumulative_kraus().matrix();
      product_residual = std::max(
          product_residual, frobenius_distance(expected, child.cumulative_kraus().matrix()));
    }
  }
  NodeResidual r{node.path(), frobenius_distance(sum, node.cumulative_element()), product_residual};
  if (r.sum_residual > tol || r.product_residual > tol) {
    report.passed = false;
    report.failing.push_back(node.path());
  }
  report.nodes.push_back(std::move(r));
  for (const auto& child : node.children()) {
    validate_node(child, tol, report);
  }
}

TreeNode attach_below(const TreeNode& node, std::span<const std::size_t> rest, const Povm& p) {
  if (rest.empty()) {
    return attach_povm(node, p);
  }
  if (rest.front() >= node.children().size()) {
    throw StructureError("attach_at: no child " + std::to_string(rest.front()) + " at " +
                         path_string(node.path()));
  }
  std::vector<TreeNode> children = node.children();
  children[rest.front()] = attach_below(children[rest.front()], rest.subspan(1), p);
  return TreeNode::assemble(node.path(), node.local_kraus(), node.cumulative_kraus(),
                            std::move(children));
}

}  // namespace

TreeNode::TreeNode(TreePath path, std::optional<KrausOperator> local, KrausOperator cumulative,
                   std::vector<TreeNode> children)
    : path_(std::move(path)),
      local_kraus_(std::move(local)),
      cumulative_(std::move(cumulative)),
      children_(std::move(children)) {}

TreeNode TreeNode::root(std::size_t dim) {
  return TreeNode({}, std::nullopt, KrausOperator(ComplexMatrix::identity(dim), "root"), {});
}

TreeNode TreeNode::assemble(TreePath path, std::optional<KrausOperator> local_kraus,
                            KrausOperator cumulative_kraus, std::vector<TreeNode> children) {
  for (const auto& child : children) {
    if (child.dim() != cumulative_kraus.dim()) {
      throw ShapeError("TreeNode::assemble: child dimension mismatch at " + path_string(path));
    }
  }
  return TreeNode(std::move(path), std::move(local_kraus), std::move(cumulative_kraus),
                  std::move(children));
}

std::optional<Povm> TreeNode::local_povm() const {
  if (is_leaf()) {
    return std::nullopt;
  }
  std::vector<KrausOperator> ops;
  for (const auto& child : children_) {
    if (!child.local_kraus()) {
      return std::nullopt;
    }
    ops.push_back(*child.local_kraus());
  }
  return Povm(std::move(ops));
}

TreeNode attach_povm(const TreeNode& node, const Povm& p) {
  if (!node.is_leaf()) {
    throw StructureError("attach_povm: node " + path_string(node.path()) + " is not a leaf");
  }
  if (p.dim() != node.dim()) {
    throw ShapeError("attach_povm: measurement dimension " + std::to_string(p.dim()) +
                     " does not match node dimension " + std::to_string(node.dim()));
  }
  std::vector<TreeNode> children;
  children.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    TreePath path = node.path();
    path.push_back(j);
    KrausOperator cumulative(p[j].matrix() * node.cumulative_kraus().matrix(), p[j].label());
    children.push_back(TreeNode::assemble(std::move(path), p[j], std::move(cumulative), {}));
  }
  return TreeNode::assemble(node.path(), node.local_kraus(), node.cumulative_kraus(),
                            std::move(children));
}

TreeNode attach_at(const TreeNode& root, std::span<const std::size_t> path, const Povm& p) {
  return attach_below(root, path, p);
}

const TreeNode* find_node(const TreeNode& root, std::span<const std::size_t> path) {
  const TreeNode* node = &root;
  for (std::size_t step : path) {
    if (step >= node->children().size()) {
      return nullptr;
    }
    node = &node->children()[step];
  }
  return node;
}

std::vector<const TreeNode*> leaves(const TreeNode& root) {
  std::vector<const TreeNode*> out;
  collect_leaves(root, out);
  return out;
}

TreeValidationReport validate_tree(const TreeNode& root, double tol) {
  TreeValidationReport report{true, tol, {}, {}};
  validate_node(root, tol, report);
  return report;
}

std::vector<LeafProbability> leaf_probabilities(const TreeNode& root, const DensityOperator& rho) {
  if (rho.dim() != root.dim()) {
    throw ShapeError("leaf_probabilities: state dimension mismatch");
  }
  std::vector<LeafProbability> out;
  for (const TreeNode* leaf : leaves(root)) {
    const ComplexMatrix& k = leaf->cumulative_kraus().matrix();
    const double p = (k * rho.matrix() * dagger(k)).trace().real();
    out.push_back({leaf->path(), std::clamp(p, 0.0, 1.0)});
  }
  return out;
}

std::vector<LeafSummary> summarize_leaves(const TreeNode& root) {
  std::vector<LeafSummary> out;
  for (const TreeNode* leaf : leaves(root)) {
    const std::vector<double> s = singular_values(leaf->cumulative_kraus().matrix());
    const auto nullity = static_cast<std::size_t>(std::count_if(
        s.begin(), s.end(), [](double x) { return x < kNullSingularValue; }));
    out.push_back({leaf->path(), s.back() * s.back(), s.front() * s.front(),
                   unitary_witness(leaf->cumulative_kraus()), nullity});
  }
  return out;
}

}  // namespace unlearn
