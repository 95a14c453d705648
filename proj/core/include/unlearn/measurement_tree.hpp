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

#ifndef UNLEARN_MEASUREMENT_TREE_HPP
#define UNLEARN_MEASUREMENT_TREE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "unlearn/povm.hpp"

namespace unlearn {

using TreePath = std::vector<std::size_t>;

/// Node of a tree of cascaded measurements.
///
/// The node for result history (j, k, ...) carries the cumulative Kraus
/// operator K_k K_j ...: each new branch operator multiplies on the left of
/// its parent's cumulative operator. Trees are values; every operation that
/// changes shape returns a new tree.
class TreeNode {
 public:
  /// Root with identity cumulative operator on a dim-dimensional system.
  static TreeNode root(std::size_t dim);

  /// Unchecked assembly, for deserialization and hand-built trees. No sum rule
  /// or product rule is enforced; use validate_tree().
  static TreeNode assemble(TreePath path, std::optional<KrausOperator> local_kraus,
                           KrausOperator cumulative_kraus, std::vector<TreeNode> children);

  const TreePath& path() const { return path_; }
  /// Branch operator on the edge from the parent; absent at the root.
  const std::optional<KrausOperator>& local_kraus() const { return local_kraus_; }
  const KrausOperator& cumulative_kraus() const { return cumulative_; }
  const std::vector<TreeNode>& children() const { return children_; }
  bool is_leaf() const { return children_.empty(); }
  std::size_t dim() const { return cumulative_.dim(); }

  /// Measurement applied at this node, rebuilt from the children's branch
  /// operators. Absent for leaves.
  std::optional<Povm> local_povm() const;

  /// cumulative^dagger cumulative.
  ComplexMatrix cumulative_element() const { return cumulative_.element(); }

 private:
  TreeNode(TreePath path, std::optional<KrausOperator> local, KrausOperator cumulative,
           std::vector<TreeNode> children);

  TreePath path_;
  std::optional<KrausOperator> local_kraus_;
  KrausOperator cumulative_;
  std::vector<TreeNode> children_;
};

/// Returns `node` with one child per outcome of p; child j carries
/// K_j * node.cumulative. Throws StructureError if node is not a leaf and
/// ShapeError on a dimension mismatch.
TreeNode attach_povm(const TreeNode& node, const Povm& p);

/// attach_povm applied to the leaf at `path` below root; returns the new root.
/// Throws StructureError if the path does not name a node.
TreeNode attach_at(const TreeNode& root, std::span<const std::size_t> path, const Povm& p);

/// Node at `path`, or nullptr.
const TreeNode* find_node(const TreeNode& root, std::span<const std::size_t> path);

/// Leaves in depth-first, outcome order.
std::vector<const TreeNode*> leaves(const TreeNode& root);

struct NodeResidual {
  TreePath path;
  /// ||Sum_children M~_child - M~_node||_F.
  double sum_residual;
  /// ||K~_child - K_child K~_node||_F, maximized over children.
  double product_residual;
};

struct TreeValidationReport {
  bool passed;
  double tolerance;
  std::vector<NodeResidual> nodes;  // interior nodes only, pre-order
  std::vector<TreePath> failing;
};

TreeValidationReport validate_tree(const TreeNode& root, double tol = kStructuralTol);

struct LeafProbability {
  TreePath path;
  double probability;
};

/// tr[M~_leaf rho] for every leaf.
std::vector<LeafProbability> leaf_probabilities(const TreeNode& root, const DensityOperator& rho);

inline constexpr double kNullSingularValue = 1e-10;

struct LeafSummary {
  TreePath path;
  /// Born probability extremes over pure states: squared smallest and largest
  /// singular values of the cumulative operator.
  double min_probability;
  double max_probability;
  std::optional<UnitaryWitness> unitary_witness;
  /// Number of singular values below 1e-10.
  std::size_t nullspace_dim;
};

std::vector<LeafSummary> summarize_leaves(const TreeNode& root);

}  // namespace unlearn

#endif  // UNLEARN_MEASUREMENT_TREE_HPP
