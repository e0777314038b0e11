#include "enumerate.hpp"

#include <stdexcept>

namespace refinery::testing {

std::shared_ptr<const LeafIndex> letter_leaves(std::size_t n) {
  if (n > 26) throw std::invalid_argument("at most 26 letter labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.emplace_back(1, static_cast<char>('a' + i));
  return std::make_shared<const LeafIndex>(labels);
}

namespace {

struct Draft {
  std::vector<VertexId> parent;
  std::vector<LeafId> leaf;
};

Tree materialize(const std::shared_ptr<const LeafIndex>& index, const Draft& d) {
  return Tree::from_parents(index, d.parent, d.leaf);
}

void extend(const std::shared_ptr<const LeafIndex>& index, Draft& d, LeafId next,
            const std::function<void(const Tree&)>& f) {
  if (static_cast<std::size_t>(next) == index->size()) {
    f(materialize(index, d));
    return;
  }
  const auto m = static_cast<VertexId>(d.parent.size());
  for (VertexId v = 0; v < m; ++v) {
    if (d.leaf[static_cast<std::size_t>(v)] != kNoLeaf) continue;
    d.parent.push_back(v);
    d.leaf.push_back(next);
    extend(index, d, next + 1, f);
    d.parent.pop_back();
    d.leaf.pop_back();
  }
  for (VertexId v = 0; v < m; ++v) {
    // New inner vertex w takes v's place; v and the new leaf hang below it.
    const VertexId old_parent = d.parent[static_cast<std::size_t>(v)];
    const VertexId w = m;
    d.parent.push_back(old_parent);
    d.leaf.push_back(kNoLeaf);
    d.parent[static_cast<std::size_t>(v)] = w;
    d.parent.push_back(w);
    d.leaf.push_back(next);
    extend(index, d, next + 1, f);
    d.parent.pop_back();
    d.leaf.pop_back();
    d.parent.pop_back();
    d.leaf.pop_back();
    d.parent[static_cast<std::size_t>(v)] = old_parent;
  }
}

}  // namespace

void for_each_phylogenetic_tree(const std::shared_ptr<const LeafIndex>& index,
                                const std::function<void(const Tree&)>& f) {
  if (index->size() == 0) throw std::invalid_argument("empty leaf set");
  Draft d{{kNoVertex}, {0}};
  extend(index, d, 1, f);
}

std::vector<Tree> all_phylogenetic_trees(const std::shared_ptr<const LeafIndex>& index) {
  std::vector<Tree> out;
  for_each_phylogenetic_tree(index, [&](const Tree& t) { out.push_back(t); });
  return out;
}

}  // namespace refinery::testing
