#include <limits>

#include "refinery/display.hpp"
#include "refinery/lincr.hpp"

namespace refinery::kernels {

namespace {

TreeTables empty_tables(TreeRefs trees) {
  TreeTables t;
  t.offsets.resize(trees.size() + 1, 0);
  for (std::size_t i = 0; i < trees.size(); ++i) t.offsets[i + 1] = t.offsets[i] + trees[i]->size();
  t.slots.resize(t.offsets.back());
  return t;
}

void fill(const Tree& tree, VertexSlot* out) {
  const auto& parents = tree.parents();
  const auto& leaves = tree.leaves();
  const auto& order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    auto& slot = out[v];
    slot.parent = parents[v];
    if (leaves[v] != kNoLeaf) {
      slot.count = 1;
      slot.candidate = leaves[v];
    }
    if (slot.parent != kNoVertex) out[static_cast<std::size_t>(slot.parent)].count += slot.count;
  }
  if (tree.n_leaves() > 1) out[static_cast<std::size_t>(tree.root())].candidate = static_cast<CandidateId>(tree.n_leaves());
}

}  // namespace

TreeTables tree_tables_serial(TreeRefs trees) {
  auto t = empty_tables(trees);
  for (std::size_t i = 0; i < trees.size(); ++i) fill(*trees[i], t.slots.data() + t.offsets[i]);
  return t;
}

TreeTables tree_tables_omp(TreeRefs trees) {
  auto t = empty_tables(trees);
  const auto k = static_cast<std::int64_t>(trees.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < k; ++i) {
    auto ui = static_cast<std::size_t>(i);
    fill(*trees[ui], t.slots.data() + t.offsets[ui]);
  }
  return t;
}

std::optional<std::size_t> first_undisplayed_serial(const Tree& t, TreeRefs inputs,
                                                     std::span<const Correspondence> corrs) {
  DisplayScratch scratch;
  for (std::size_t i = 0; i < inputs.size(); ++i)
    if (!check_display(t, *inputs[i], corrs[i], scratch)) return i;
  return std::nullopt;
}

std::optional<std::size_t> first_undisplayed_omp(const Tree& t, TreeRefs inputs,
                                                  std::span<const Correspondence> corrs) {
  const auto k = static_cast<std::int64_t>(inputs.size());
  std::int64_t first = std::numeric_limits<std::int64_t>::max();
#pragma omp parallel reduction(min : first)
  {
    DisplayScratch scratch;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < k; ++i) {
      auto ui = static_cast<std::size_t>(i);
      if (i < first && !check_display(t, *inputs[ui], corrs[ui], scratch)) first = i;
    }
  }
  if (first == std::numeric_limits<std::int64_t>::max()) return std::nullopt;
  return static_cast<std::size_t>(first);
}

}  // namespace refinery::kernels
