#include "refinery/display.hpp"

#include <unordered_map>

#include "refinery/cluster.hpp"

namespace refinery {

bool Correspondence::is_consistent() const {
  for (std::size_t a = 0; a < a_to_b.size(); ++a) {
    VertexId b = a_to_b[a];
    if (b == kNoVertex) continue;
    if (b < 0 || static_cast<std::size_t>(b) >= b_to_a.size()) return false;
    if (b_to_a[static_cast<std::size_t>(b)] != static_cast<VertexId>(a)) return false;
  }
  for (std::size_t b = 0; b < b_to_a.size(); ++b) {
    VertexId a = b_to_a[b];
    if (a == kNoVertex) continue;
    if (a < 0 || static_cast<std::size_t>(a) >= a_to_b.size()) return false;
    if (a_to_b[static_cast<std::size_t>(a)] != static_cast<VertexId>(b)) return false;
  }
  return true;
}

bool check_display(const Tree& t, const Tree& target, const Correspondence& corr) {
  DisplayScratch scratch;
  return check_display(t, target, corr, scratch);
}

bool check_display(const Tree& t, const Tree& target, const Correspondence& corr, DisplayScratch& scratch) {
  if (corr.a_to_b.size() != target.size()) return false;
  if (t.n_leaves() != target.n_leaves()) return false;

  // image_of[x] = target vertex mapped onto t vertex x.
  auto& image_of = scratch.image_of;
  image_of.assign(t.size(), kNoVertex);
  for (std::size_t w = 0; w < target.size(); ++w) {
    VertexId x = corr.a_to_b[w];
    if (x == kNoVertex || x < 0 || static_cast<std::size_t>(x) >= t.size()) return false;
    auto& slot = image_of[static_cast<std::size_t>(x)];
    if (slot != kNoVertex) return false;
    slot = static_cast<VertexId>(w);
    auto wv = static_cast<VertexId>(w);
    if (target.is_leaf(wv) != t.is_leaf(x)) return false;
    if (target.is_leaf(wv) && target.leaf_id(wv) != t.leaf_id(x)) return false;
  }
  if (image_of[static_cast<std::size_t>(t.root())] != target.root()) return false;

  // Contracted copy of t as a parent array: each kept vertex hangs from its
  // nearest kept proper ancestor. Leaves are all kept (same count, injective).
  auto& contracted_parent = scratch.contracted_parent;
  contracted_parent.assign(t.size(), kNoVertex);
  for (VertexId x : t.preorder()) {
    VertexId p = t.parent(x);
    if (p == kNoVertex) continue;
    auto pi = static_cast<std::size_t>(p);
    contracted_parent[static_cast<std::size_t>(x)] = image_of[pi] != kNoVertex ? p : contracted_parent[pi];
  }

  // With an injective correspondence, matching every parent edge makes the
  // children sets equal: a kept child of x's copy is the image of some target
  // vertex, whose parent must then be x's preimage.
  for (std::size_t w = 0; w < target.size(); ++w) {
    VertexId p = target.parent(static_cast<VertexId>(w));
    if (p == kNoVertex) continue;
    if (contracted_parent[static_cast<std::size_t>(corr.a_to_b[w])] != corr.a_to_b[static_cast<std::size_t>(p)])
      return false;
  }
  return true;
}

Correspondence cluster_correspondence(const Tree& target, const Tree& t) {
  Correspondence corr(target.size(), t.size());
  auto t_clusters = vertex_clusters(t);
  std::unordered_map<Cluster, VertexId, ClusterHash> by_cluster;
  by_cluster.reserve(t_clusters.size());
  for (std::size_t x = 0; x < t_clusters.size(); ++x) by_cluster.emplace(std::move(t_clusters[x]), static_cast<VertexId>(x));
  auto target_clusters = vertex_clusters(target);
  for (std::size_t w = 0; w < target_clusters.size(); ++w) {
    auto it = by_cluster.find(target_clusters[w]);
    if (it != by_cluster.end() && corr.b_to_a[static_cast<std::size_t>(it->second)] == kNoVertex)
      corr.link(static_cast<VertexId>(w), it->second);
  }
  return corr;
}

bool displays(const Tree& t, const Tree& target) {
  return check_display(t, target, cluster_correspondence(target, t));
}

}  // namespace refinery
