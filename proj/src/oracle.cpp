#include "refinery/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace refinery {

ClusterUniverse union_clusters(std::span<const Tree> inputs) {
  std::unordered_map<Cluster, std::size_t, ClusterHash> seen;
  for (const auto& t : inputs) {
    auto per_tree = vertex_clusters(t);
    // Count each cluster once per tree.
    std::unordered_map<Cluster, bool, ClusterHash> local;
    for (auto& c : per_tree) {
      if (local.emplace(c, true).second) ++seen[std::move(c)];
    }
  }
  std::vector<std::pair<Cluster, std::size_t>> items(seen.begin(), seen.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  ClusterUniverse u;
  u.clusters.reserve(items.size());
  u.multiplicity.reserve(items.size());
  for (auto& [c, m] : items) {
    u.clusters.push_back(std::move(c));
    u.multiplicity.push_back(m);
  }
  return u;
}

HierarchyCheck is_hierarchy(const ClusterUniverse& u) {
  const auto& cs = u.clusters;
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = a + 1; b < cs.size(); ++b)
      if (!cs[a].compatible_with(cs[b])) return {false, std::make_pair(a, b)};
  return {};
}

Tree hasse_tree(const ClusterUniverse& u, std::shared_ptr<const LeafIndex> index) {
  const auto& cs = u.clusters;
  const std::size_t n = index->size();
  if (cs.empty() || cs.front().cardinality() != n) throw std::invalid_argument("universe lacks the full leaf set");
  std::size_t singletons = 0;
  for (const auto& c : cs) singletons += c.cardinality() == 1;
  if (singletons != n) throw std::invalid_argument("universe lacks some singleton");
  if (!is_hierarchy(u).ok) throw std::invalid_argument("cluster set is not a hierarchy");

  std::vector<VertexId> parents(cs.size(), kNoVertex);
  std::vector<LeafId> leaf_of(cs.size(), kNoLeaf);
  for (std::size_t j = 1; j < cs.size(); ++j) {
    // Scanning back from j meets candidates in non-decreasing size; the first
    // strict superset is the inclusion-minimal one.
    std::size_t i = j;
    while (i-- > 0) {
      if (cs[i].cardinality() > cs[j].cardinality() && cs[j].is_subset_of(cs[i])) break;
    }
    if (i == static_cast<std::size_t>(-1)) throw std::invalid_argument("cluster without superset");
    parents[j] = static_cast<VertexId>(i);
  }
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (cs[j].cardinality() == 1) leaf_of[j] = cs[j].first();
  }
  return Tree::from_parents(std::move(index), parents, leaf_of);
}

RefineOutcome refine_oracle(std::span<const Tree> inputs) {
  validate_instance(inputs);
  auto universe = union_clusters(inputs);
  auto check = is_hierarchy(universe);
  if (!check.ok) {
    const auto& index = inputs.front().index();
    const auto& [a, b] = *check.witness;
    return Incompatible{IncompatibleReason::kNotHierarchy,
                        "overlapping clusters " + format_cluster(universe.clusters[a], index) + " and " +
                            format_cluster(universe.clusters[b], index)};
  }
  Tree t = hasse_tree(universe, inputs.front().index_ptr());
  std::vector<Correspondence> corrs;
  corrs.reserve(inputs.size());
  for (const auto& input : inputs) corrs.push_back(cluster_correspondence(input, t));
  return Refined{std::move(t), std::move(corrs)};
}

}  // namespace refinery
