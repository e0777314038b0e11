#pragma once

#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "refinery/cluster.hpp"
#include "refinery/newick.hpp"
#include "refinery/outcome.hpp"

namespace refinery::testing {

// Parses every string into one shared index.
inline std::vector<Tree> trees(std::initializer_list<std::string_view> texts) {
  auto index = std::make_shared<LeafIndex>();
  std::vector<Tree> out;
  for (auto t : texts) out.push_back(parse_newick(t, index));
  return out;
}

inline Tree tree(std::string_view text) { return parse_newick(text); }

inline std::string canon(std::string_view text) { return to_newick(parse_newick(text)); }

// dedup(union of input clusters), computed independently of the oracle module.
inline ClusterSet cluster_union(std::span<const Tree> inputs) {
  std::vector<Cluster> all;
  for (const auto& t : inputs)
    for (const auto& c : clusters(t)) all.push_back(c);
  return ClusterSet(std::move(all));
}

// Same outcome kind and, when refined, the same canonical tree.
inline bool same_outcome(const RefineOutcome& a, const RefineOutcome& b) {
  if (a.is_refined() != b.is_refined()) return false;
  return !a.is_refined() || to_newick(a.tree()) == to_newick(b.tree());
}

}  // namespace refinery::testing
