#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "refinery/leaf_index.hpp"

namespace refinery {

using VertexId = std::int32_t;
inline constexpr VertexId kNoVertex = -1;

struct Vertex {
  VertexId parent = kNoVertex;
  std::vector<VertexId> children;
  // Set exactly for leaves.
  LeafId leaf = kNoLeaf;
};

// Rooted tree with dense vertex ids. Leaves carry ids from a shared LeafIndex;
// the tree covers a subset of that index (the whole index for instance trees).
// Immutable after construction; stored as flat parent/leaf arrays with
// children in one contiguous list.
class Tree {
 public:
  // Validates structure; throws std::invalid_argument on violation.
  Tree(std::shared_ptr<const LeafIndex> index, std::vector<Vertex> vertices, VertexId root);

  static Tree single_leaf(std::shared_ptr<const LeafIndex> index, LeafId leaf);

  // Builds a tree from a parent array; children appear in increasing id order.
  static Tree from_parents(std::shared_ptr<const LeafIndex> index, std::span<const VertexId> parents,
                           std::span<const LeafId> leaf_of_vertex);

  std::size_t size() const { return parent_.size(); }
  std::size_t n_leaves() const { return n_leaves_; }
  VertexId root() const { return root_; }

  VertexId parent(VertexId v) const { return parent_[static_cast<std::size_t>(v)]; }
  std::span<const VertexId> children(VertexId v) const {
    auto i = static_cast<std::size_t>(v);
    return std::span<const VertexId>(child_list_).subspan(child_begin_[i], child_begin_[i + 1] - child_begin_[i]);
  }
  bool is_leaf(VertexId v) const { return leaf_[static_cast<std::size_t>(v)] != kNoLeaf; }
  LeafId leaf_id(VertexId v) const { return leaf_[static_cast<std::size_t>(v)]; }
  // kNoVertex when the leaf id is not part of this tree.
  VertexId leaf_vertex(LeafId leaf) const {
    auto i = static_cast<std::size_t>(leaf);
    return i < leaf_vertex_.size() ? leaf_vertex_[i] : kNoVertex;
  }

  const std::vector<VertexId>& parents() const { return parent_; }
  const std::vector<LeafId>& leaves() const { return leaf_; }

  const LeafIndex& index() const { return *index_; }
  const std::shared_ptr<const LeafIndex>& index_ptr() const { return index_; }
  // True when the tree's leaves are exactly the ids of its index.
  bool covers_index() const { return n_leaves_ == index_->size(); }

  // Root first, parents before children, children in stored order.
  const std::vector<VertexId>& preorder() const { return preorder_; }
  // Reverse of a preorder: children before parents.
  std::vector<VertexId> postorder() const;

  std::vector<Vertex> to_vertices() const;

 private:
  Tree() = default;
  void validate();

  std::shared_ptr<const LeafIndex> index_;
  std::vector<VertexId> parent_;
  std::vector<LeafId> leaf_;
  std::vector<std::uint32_t> child_begin_;  // size() + 1 offsets into child_list_
  std::vector<VertexId> child_list_;
  VertexId root_ = kNoVertex;
  std::size_t n_leaves_ = 0;
  std::vector<VertexId> leaf_vertex_;
  std::vector<VertexId> preorder_;
};

// Number of leaves below each vertex, indexed by vertex id.
std::vector<std::int32_t> leaf_counts(const Tree& t);

// No inner vertex with exactly one child.
bool is_phylogenetic(const Tree& t);

// Removes every inner vertex v with !keep(v), reattaching its children to its
// parent at v's position. When old_to_new is given it receives the new id of
// each kept vertex (kNoVertex for removed ones). Throws std::invalid_argument
// if the root or a leaf is not kept.
Tree contract_vertices(const Tree& t, const std::function<bool(VertexId)>& keep,
                       std::vector<VertexId>* old_to_new = nullptr);

}  // namespace refinery
