#include "refinery/tree.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace refinery {

Tree::Tree(std::shared_ptr<const LeafIndex> index, std::vector<Vertex> vertices, VertexId root)
    : index_(std::move(index)), root_(root) {
  if (!index_) throw std::invalid_argument("tree requires a leaf index");
  const auto n = vertices.size();
  if (n == 0) throw std::invalid_argument("tree has no vertices");
  if (root_ < 0 || static_cast<std::size_t>(root_) >= n) throw std::invalid_argument("root id out of range");
  parent_.resize(n);
  leaf_.resize(n);
  child_begin_.resize(n + 1, 0);
  child_list_.reserve(n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& vx = vertices[v];
    parent_[v] = vx.parent;
    leaf_[v] = vx.leaf;
    child_begin_[v] = static_cast<std::uint32_t>(child_list_.size());
    for (VertexId c : vx.children) {
      if (c < 0 || static_cast<std::size_t>(c) >= n || vertices[static_cast<std::size_t>(c)].parent != static_cast<VertexId>(v))
        throw std::invalid_argument("parent/children mismatch at vertex " + std::to_string(v));
      // Each non-root vertex is listed as a child exactly once.
      if (child_list_.size() == n - 1) throw std::invalid_argument("children lists do not form a tree");
      child_list_.push_back(c);
    }
  }
  child_begin_[n] = static_cast<std::uint32_t>(child_list_.size());
  if (child_list_.size() != n - 1) throw std::invalid_argument("children lists do not form a tree");
  validate();
}

Tree Tree::single_leaf(std::shared_ptr<const LeafIndex> index, LeafId leaf) {
  std::vector<Vertex> vs(1);
  vs[0].leaf = leaf;
  return Tree(std::move(index), std::move(vs), 0);
}

Tree Tree::from_parents(std::shared_ptr<const LeafIndex> index, std::span<const VertexId> parents,
                        std::span<const LeafId> leaf_of_vertex) {
  if (!index) throw std::invalid_argument("tree requires a leaf index");
  if (parents.size() != leaf_of_vertex.size())
    throw std::invalid_argument("parent and leaf arrays differ in length");
  const auto n = parents.size();
  if (n == 0) throw std::invalid_argument("tree has no vertices");
  Tree t;
  t.index_ = std::move(index);
  t.parent_.assign(parents.begin(), parents.end());
  t.leaf_.assign(leaf_of_vertex.begin(), leaf_of_vertex.end());
  // Counting sort of vertices by parent keeps children in increasing id order.
  t.child_begin_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    VertexId p = parents[v];
    if (p == kNoVertex) {
      if (t.root_ != kNoVertex) throw std::invalid_argument("more than one root");
      t.root_ = static_cast<VertexId>(v);
    } else {
      if (p < 0 || static_cast<std::size_t>(p) >= n) throw std::invalid_argument("parent id out of range");
      ++t.child_begin_[static_cast<std::size_t>(p) + 1];
    }
  }
  if (t.root_ == kNoVertex) throw std::invalid_argument("tree has no root");
  for (std::size_t v = 0; v < n; ++v) t.child_begin_[v + 1] += t.child_begin_[v];
  t.child_list_.resize(n - 1);
  std::vector<std::uint32_t> next(t.child_begin_.begin(), t.child_begin_.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {
    VertexId p = parents[v];
    if (p != kNoVertex) t.child_list_[next[static_cast<std::size_t>(p)]++] = static_cast<VertexId>(v);
  }
  t.validate();
  return t;
}

void Tree::validate() {
  const auto n = parent_.size();
  if (parent_[static_cast<std::size_t>(root_)] != kNoVertex) throw std::invalid_argument("root has a parent");

  leaf_vertex_.assign(index_->size(), kNoVertex);
  n_leaves_ = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (static_cast<VertexId>(v) != root_) {
      if (parent_[v] < 0 || static_cast<std::size_t>(parent_[v]) >= n)
        throw std::invalid_argument("vertex " + std::to_string(v) + " has no valid parent");
    }
    const LeafId leaf = leaf_[v];
    if (child_begin_[v] == child_begin_[v + 1]) {
      if (leaf == kNoLeaf) throw std::invalid_argument("leaf vertex " + std::to_string(v) + " has no label");
      if (leaf < 0 || static_cast<std::size_t>(leaf) >= index_->size())
        throw std::invalid_argument("leaf id out of index range");
      auto& slot = leaf_vertex_[static_cast<std::size_t>(leaf)];
      if (slot != kNoVertex) throw std::invalid_argument("duplicate leaf label '" + index_->label(leaf) + "'");
      slot = static_cast<VertexId>(v);
      ++n_leaves_;
    } else if (leaf != kNoLeaf) {
      throw std::invalid_argument("inner vertex " + std::to_string(v) + " carries a leaf label");
    }
  }

  // Every vertex is reachable from the root iff the structure is one tree.
  preorder_.clear();
  preorder_.reserve(n);
  std::vector<VertexId> stack;
  stack.reserve(n);
  stack.push_back(root_);
  std::vector<char> seen(n, 0);
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    auto& s = seen[static_cast<std::size_t>(v)];
    if (s) throw std::invalid_argument("tree contains a cycle");
    s = 1;
    preorder_.push_back(v);
    auto ch = children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  if (preorder_.size() != n) throw std::invalid_argument("tree is not connected");
}

std::vector<VertexId> Tree::postorder() const { return {preorder_.rbegin(), preorder_.rend()}; }

std::vector<Vertex> Tree::to_vertices() const {
  std::vector<Vertex> out(size());
  for (std::size_t v = 0; v < size(); ++v) {
    out[v].parent = parent_[v];
    out[v].leaf = leaf_[v];
    auto ch = children(static_cast<VertexId>(v));
    out[v].children.assign(ch.begin(), ch.end());
  }
  return out;
}

std::vector<std::int32_t> leaf_counts(const Tree& t) {
  std::vector<std::int32_t> count(t.size(), 0);
  const auto& order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& c = count[static_cast<std::size_t>(*it)];
    if (t.is_leaf(*it)) c = 1;
    VertexId p = t.parent(*it);
    if (p != kNoVertex) count[static_cast<std::size_t>(p)] += c;
  }
  return count;
}

bool is_phylogenetic(const Tree& t) {
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.children(static_cast<VertexId>(v)).size() == 1) return false;
  return true;
}

Tree contract_vertices(const Tree& t, const std::function<bool(VertexId)>& keep,
                       std::vector<VertexId>* old_to_new) {
  if (!keep(t.root())) throw std::invalid_argument("cannot contract the root");
  std::vector<VertexId> new_id(t.size(), kNoVertex);
  std::vector<Vertex> out;
  out.reserve(t.size());

  // Top-down: every kept vertex is attached to its nearest kept ancestor.
  // Traversal in preorder keeps the relative order of reattached children.
  std::vector<VertexId> kept_anchor(t.size(), kNoVertex);
  for (VertexId v : t.preorder()) {
    const auto vi = static_cast<std::size_t>(v);
    VertexId p = t.parent(v);
    VertexId anchor = kNoVertex;
    if (p != kNoVertex) {
      anchor = new_id[static_cast<std::size_t>(p)] != kNoVertex ? new_id[static_cast<std::size_t>(p)]
                                                               : kept_anchor[static_cast<std::size_t>(p)];
    }
    if (v == t.root() || keep(v)) {
      auto id = static_cast<VertexId>(out.size());
      new_id[vi] = id;
      Vertex nv;
      nv.parent = anchor;
      nv.leaf = t.leaf_id(v);
      out.push_back(std::move(nv));
      if (anchor != kNoVertex) out[static_cast<std::size_t>(anchor)].children.push_back(id);
    } else {
      if (t.is_leaf(v)) throw std::invalid_argument("cannot contract a leaf");
      kept_anchor[vi] = anchor;
    }
  }
  VertexId root = new_id[static_cast<std::size_t>(t.root())];
  if (old_to_new) *old_to_new = std::move(new_id);
  return Tree(t.index_ptr(), std::move(out), root);
}

}  // namespace refinery
