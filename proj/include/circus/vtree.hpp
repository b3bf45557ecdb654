#pragma once

#include "circus/core.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace circus {

using TreeIndex = std::size_t;

struct TreeNode {
  std::string id;
  bool leaf = true;
  std::optional<TreeIndex> left;
  std::optional<TreeIndex> right;
  std::optional<TreeIndex> parent;
  std::string var;  // v-tree leaves only
};

/// Ordered binary tree with string node ids. Children may be linked after the
/// nodes are declared, which keeps file parsing order-independent.
class BinaryTree {
 public:
  TreeIndex add_leaf(std::string id);
  TreeIndex add_internal(std::string id);
  /// Either child may be left empty; validate() then reports not-full-binary.
  void set_children(TreeIndex node, std::optional<TreeIndex> left, std::optional<TreeIndex> right);
  TreeIndex add_internal(std::string id, TreeIndex left, TreeIndex right);
  void set_root(TreeIndex r) { root_ = r; }

  bool has_root() const noexcept { return root_.has_value(); }
  /// Throws invalid_structure when unset.
  TreeIndex root() const;
  std::size_t size() const noexcept { return nodes_.size(); }
  const TreeNode& node(TreeIndex i) const { return nodes_.at(i); }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  bool is_leaf(TreeIndex i) const { return nodes_.at(i).leaf; }
  TreeIndex left(TreeIndex i) const { return *nodes_.at(i).left; }
  TreeIndex right(TreeIndex i) const { return *nodes_.at(i).right; }
  std::optional<TreeIndex> parent(TreeIndex i) const { return nodes_.at(i).parent; }

  std::optional<TreeIndex> find(std::string_view id) const;
  TreeIndex at(std::string_view id) const;

  /// Children before parents, left subtree first.
  std::vector<TreeIndex> postorder() const;
  /// Leaves from left to right.
  std::vector<TreeIndex> leaves() const;
  std::size_t depth(TreeIndex i) const;
  TreeIndex lca(TreeIndex a, TreeIndex b) const;

  /// Rooted, full binary, every node reachable from the root with one parent.
  /// Throws not_full_binary or invalid_structure.
  void validate_shape() const;

 protected:
  TreeIndex push(TreeNode n);
  std::vector<TreeNode> nodes_;
  std::unordered_map<std::string, TreeIndex> index_;
  std::optional<TreeIndex> root_;
};

/// Shape of a tree over which labelings are read by tree automata.
class TreeSkeleton : public BinaryTree {};

/// Full binary tree whose leaves are in bijection with a set of variables.
class VTree : public BinaryTree {
 public:
  using BinaryTree::add_leaf;
  TreeIndex add_leaf(std::string id, std::string var);

  const std::string& var(TreeIndex leaf) const { return node(leaf).var; }
  /// Leaf carrying `var`, if any.
  std::optional<TreeIndex> leaf_of(std::string_view var) const;
  std::vector<std::string> variables() const;

  /// Variables under each node, as bitsets over `u`. Throws unknown_variable.
  std::vector<Bits> node_vars(const VarUniverse& u) const;
};

/// Leaf for a single variable; otherwise root(leaf(first), right_linear(rest)).
/// Throws empty_order or duplicate_variable.
VTree right_linear(const std::vector<std::string>& order);

/// Internal node n with children n1, n2 becomes
/// internal(leaf n, internal(push n1, push n2)); variables are skeleton ids.
VTree leaf_push(const TreeSkeleton& t);

/// Throws not_full_binary or leaf_set_mismatch.
void validate_vtree(const VTree& v, const VarUniverse& u);

/// Drops leaves whose variable is not in `keep` and splices out internal
/// nodes left with one child. Empty when nothing remains.
std::optional<VTree> restrict_vtree(const VTree& v, const VarUniverse& keep);

}  // namespace circus
