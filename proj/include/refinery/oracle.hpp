#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "refinery/cluster.hpp"
#include "refinery/outcome.hpp"

namespace refinery {

// Brute-force reference: the explicit union of all input clusters.
struct ClusterUniverse {
  // Deduplicated, cardinality descending, ties lexicographic.
  std::vector<Cluster> clusters;
  // Number of inputs each cluster came from.
  std::vector<std::size_t> multiplicity;
};

ClusterUniverse union_clusters(std::span<const Tree> inputs);

struct HierarchyCheck {
  bool ok = true;
  // Indices into the universe of the first overlapping pair found.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

HierarchyCheck is_hierarchy(const ClusterUniverse& u);

// Tree whose clusters are exactly u. Each cluster hangs from the smallest
// strict superset. Throws std::invalid_argument unless u is a hierarchy
// containing the full set and every singleton.
Tree hasse_tree(const ClusterUniverse& u, std::shared_ptr<const LeafIndex> index);

RefineOutcome refine_oracle(std::span<const Tree> inputs);

}  // namespace refinery
