#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "refinery/tree.hpp"

namespace refinery::testing {

// Labels "a", "b", ... for n <= 26.
std::shared_ptr<const LeafIndex> letter_leaves(std::size_t n);

// Calls f on every labeled rooted phylogenetic tree over the whole index,
// built by inserting leaf i into each tree on leaves 0..i-1 either as a new
// child of an inner vertex or by subdividing an edge (including one above
// the root). Counts: 1, 1, 4, 26, 236, 2752, 39208 for n = 1..7.
void for_each_phylogenetic_tree(const std::shared_ptr<const LeafIndex>& index,
                                const std::function<void(const Tree&)>& f);

std::vector<Tree> all_phylogenetic_trees(const std::shared_ptr<const LeafIndex>& index);

}  // namespace refinery::testing
