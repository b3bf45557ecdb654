#include "circus/vtree.hpp"
#include "id_pool.hpp"

#include <functional>
#include <set>

namespace circus {

TreeIndex BinaryTree::push(TreeNode n) {
  if (index_.count(n.id) != 0) throw Error(Errc::duplicate_id, n.id);
  TreeIndex i = nodes_.size();
  index_.emplace(n.id, i);
  nodes_.push_back(std::move(n));
  return i;
}

TreeIndex BinaryTree::add_leaf(std::string id) {
  TreeNode n;
  n.id = std::move(id);
  return push(std::move(n));
}

TreeIndex BinaryTree::add_internal(std::string id) {
  TreeNode n;
  n.id = std::move(id);
  n.leaf = false;
  return push(std::move(n));
}

void BinaryTree::set_children(TreeIndex node, std::optional<TreeIndex> left, std::optional<TreeIndex> right) {
  TreeNode& n = nodes_.at(node);
  if (n.leaf) throw Error(Errc::invalid_structure, "leaf '" + n.id + "' cannot have children");
  for (auto c : {left, right}) {
    if (!c) continue;
    TreeNode& child = nodes_.at(*c);
    if (child.parent || *c == node)
      throw Error(Errc::invalid_structure, "node '" + child.id + "' has more than one parent");
    child.parent = node;
  }
  n.left = left;
  n.right = right;
}

TreeIndex BinaryTree::add_internal(std::string id, TreeIndex left, TreeIndex right) {
  TreeIndex i = add_internal(std::move(id));
  set_children(i, left, right);
  return i;
}

TreeIndex BinaryTree::root() const {
  if (!root_) throw Error(Errc::invalid_structure, "tree has no root");
  return *root_;
}

std::optional<TreeIndex> BinaryTree::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TreeIndex BinaryTree::at(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(Errc::unknown_id, std::string(id));
}

std::vector<TreeIndex> BinaryTree::postorder() const {
  std::vector<TreeIndex> out;
  std::vector<std::pair<TreeIndex, bool>> stack{{root(), false}};
  while (!stack.empty()) {
    auto [i, expanded] = stack.back();
    stack.pop_back();
    const TreeNode& n = nodes_[i];
    if (expanded || n.leaf) {
      out.push_back(i);
      continue;
    }
    stack.push_back({i, true});
    if (n.right) stack.push_back({*n.right, false});
    if (n.left) stack.push_back({*n.left, false});
  }
  return out;
}

std::vector<TreeIndex> BinaryTree::leaves() const {
  std::vector<TreeIndex> out;
  for (TreeIndex i : postorder())
    if (nodes_[i].leaf) out.push_back(i);
  return out;
}

std::size_t BinaryTree::depth(TreeIndex i) const {
  std::size_t d = 0;
  while (nodes_.at(i).parent) {
    i = *nodes_[i].parent;
    ++d;
  }
  return d;
}

TreeIndex BinaryTree::lca(TreeIndex a, TreeIndex b) const {
  std::size_t da = depth(a), db = depth(b);
  for (; da > db; --da) a = *nodes_[a].parent;
  for (; db > da; --db) b = *nodes_[b].parent;
  while (a != b) {
    a = *nodes_[a].parent;
    b = *nodes_[b].parent;
  }
  return a;
}

void BinaryTree::validate_shape() const {
  if (nodes_.empty()) throw Error(Errc::invalid_structure, "tree has no nodes");
  TreeIndex r = root();
  if (nodes_[r].parent) throw Error(Errc::invalid_structure, "root '" + nodes_[r].id + "' has a parent");
  for (const auto& n : nodes_) {
    if (!n.leaf && (!n.left || !n.right))
      throw Error(Errc::not_full_binary, "internal node '" + n.id + "' needs exactly two children");
  }
  // parents are unique by construction, so reaching every node from the root
  // rules out cycles as well
  if (postorder().size() != nodes_.size())
    throw Error(Errc::invalid_structure, "some nodes are not reachable from the root");
}

TreeIndex VTree::add_leaf(std::string id, std::string var) {
  if (!is_valid_variable_name(var)) throw Error(Errc::invalid_variable, "'" + var + "'");
  TreeNode n;
  n.id = std::move(id);
  n.var = std::move(var);
  return push(std::move(n));
}

std::optional<TreeIndex> VTree::leaf_of(std::string_view var) const {
  for (TreeIndex i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].leaf && nodes_[i].var == var) return i;
  return std::nullopt;
}

std::vector<std::string> VTree::variables() const {
  std::vector<std::string> out;
  for (TreeIndex i : leaves()) out.push_back(nodes_[i].var);
  return out;
}

std::vector<Bits> VTree::node_vars(const VarUniverse& u) const {
  std::vector<Bits> out(nodes_.size(), Bits(u.size()));
  for (TreeIndex i : postorder()) {
    const TreeNode& n = nodes_[i];
    if (n.leaf) out[i].set(u.at(n.var));
    else out[i] = out[*n.left] | out[*n.right];
  }
  return out;
}

VTree right_linear(const std::vector<std::string>& order) {
  if (order.empty()) throw Error(Errc::empty_order, "right-linear v-tree needs at least one variable");
  std::set<std::string> seen;
  for (const auto& v : order)
    if (!seen.insert(v).second) throw Error(Errc::duplicate_variable, v);
  VTree t;
  detail::IdPool ids;
  for (const auto& v : order) ids.reserve(v);
  TreeIndex tail = t.add_leaf(order.back(), order.back());
  for (std::size_t i = order.size() - 1; i-- > 0;) {
    TreeIndex leaf = t.add_leaf(order[i], order[i]);
    tail = t.add_internal(ids.fresh("r" + std::to_string(i)), leaf, tail);
  }
  t.set_root(tail);
  return t;
}

VTree leaf_push(const TreeSkeleton& t) {
  t.validate_shape();
  VTree out;
  detail::IdPool ids;
  for (const auto& n : t.nodes()) ids.reserve(n.id);
  std::vector<TreeIndex> image(t.size());
  for (TreeIndex i : t.postorder()) {
    const TreeNode& n = t.node(i);
    TreeIndex self = out.add_leaf(n.id, n.id);
    if (n.leaf) {
      image[i] = self;
      continue;
    }
    TreeIndex below = out.add_internal(ids.fresh(n.id + "_c"), image[*n.left], image[*n.right]);
    image[i] = out.add_internal(ids.fresh(n.id + "_p"), self, below);
  }
  out.set_root(image[t.root()]);
  return out;
}

void validate_vtree(const VTree& v, const VarUniverse& u) {
  v.validate_shape();
  std::set<std::string> seen;
  for (TreeIndex i : v.leaves()) {
    const std::string& var = v.var(i);
    if (!seen.insert(var).second) throw Error(Errc::leaf_set_mismatch, "variable '" + var + "' labels two leaves");
    if (!u.contains(var)) throw Error(Errc::leaf_set_mismatch, "variable '" + var + "' is not in the universe");
  }
  for (const auto& name : u.names())
    if (seen.count(name) == 0) throw Error(Errc::leaf_set_mismatch, "no leaf for variable '" + name + "'");
}

std::optional<VTree> restrict_vtree(const VTree& v, const VarUniverse& keep) {
  VTree out;
  std::function<std::optional<TreeIndex>(TreeIndex)> copy = [&](TreeIndex i) -> std::optional<TreeIndex> {
    const TreeNode& n = v.node(i);
    if (n.leaf) {
      if (!keep.contains(n.var)) return std::nullopt;
      return out.add_leaf(n.id, n.var);
    }
    auto l = copy(*n.left);
    auto r = copy(*n.right);
    if (l && r) return out.add_internal(n.id, *l, *r);
    return l ? l : r;
  };
  auto root = copy(v.root());
  if (!root) return std::nullopt;
  out.set_root(*root);
  return out;
}

}  // namespace circus
