#include "refinery/build.hpp"

#include <algorithm>
#include <climits>
#include <ostream>

#include "refinery/cluster.hpp"
#include "refinery/union_find.hpp"

namespace refinery {

TripleSet::TripleSet(std::vector<Triple> triples) : items_(std::move(triples)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool TripleSet::contains(const Triple& t) const { return std::binary_search(items_.begin(), items_.end(), t); }

bool TripleSet::is_subset_of(const TripleSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

namespace {

std::vector<LeafId> min_leaf_per_vertex(const Tree& t) {
  std::vector<LeafId> out(t.size(), kNoLeaf);
  for (VertexId v : t.postorder()) {
    auto vi = static_cast<std::size_t>(v);
    if (t.is_leaf(v)) {
      out[vi] = t.leaf_id(v);
      continue;
    }
    LeafId m = out[static_cast<std::size_t>(t.children(v).front())];
    for (VertexId c : t.children(v)) m = std::min(m, out[static_cast<std::size_t>(c)]);
    out[vi] = m;
  }
  return out;
}

}  // namespace

TripleSet representative_triples(const Tree& t) {
  std::vector<Triple> out;
  if (t.n_leaves() < 3) return TripleSet{};
  auto min_leaf = min_leaf_per_vertex(t);
  for (std::size_t ui = 0; ui < t.size(); ++ui) {
    const auto& kids = t.children(static_cast<VertexId>(ui));
    for (std::size_t j = 0; j < kids.size(); ++j) {
      VertexId v = kids[j];
      if (t.is_leaf(v)) continue;
      const auto& grandkids = t.children(v);
      for (std::size_t s = 0; s < kids.size(); ++s) {
        if (s == j) continue;
        LeafId z = min_leaf[static_cast<std::size_t>(kids[s])];
        for (std::size_t c = 0; c + 1 < grandkids.size(); ++c) {
          out.push_back(Triple::make(min_leaf[static_cast<std::size_t>(grandkids[c])],
                                     min_leaf[static_cast<std::size_t>(grandkids[c + 1])], z));
        }
      }
    }
  }
  return TripleSet(std::move(out));
}

TripleSet all_triples(const Tree& t) {
  std::vector<Triple> out;
  auto cs = vertex_clusters(t);
  std::vector<LeafId> leaves;
  for (VertexId v = 0; static_cast<std::size_t>(v) < t.size(); ++v)
    if (t.is_leaf(v)) leaves.push_back(t.leaf_id(v));
  std::sort(leaves.begin(), leaves.end());
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    for (std::size_t b = a + 1; b < leaves.size(); ++b) {
      // Smallest cluster holding both: the lca's cluster.
      const Cluster* lca = nullptr;
      for (const auto& c : cs) {
        if (c.test(leaves[a]) && c.test(leaves[b]) && (!lca || c.cardinality() < lca->cardinality())) lca = &c;
      }
      for (LeafId z : leaves) {
        if (!lca->test(z)) out.push_back(Triple{leaves[a], leaves[b], z});
      }
    }
  }
  return TripleSet(std::move(out));
}

std::optional<Tree> build(const TripleSet& triples, std::shared_ptr<const LeafIndex> leaves) {
  const std::size_t n = leaves->size();
  if (n == 0) return std::nullopt;

  struct Task {
    std::vector<LeafId> leaves;
    std::vector<Triple> triples;
    VertexId parent;
  };
  std::vector<Vertex> out;
  out.reserve(2 * n);
  auto add_vertex = [&](VertexId parent, LeafId leaf) {
    auto id = static_cast<VertexId>(out.size());
    Vertex v;
    v.parent = parent;
    v.leaf = leaf;
    out.push_back(std::move(v));
    if (parent != kNoVertex) out[static_cast<std::size_t>(parent)].children.push_back(id);
    return id;
  };

  std::vector<std::uint32_t> local(n, 0);
  std::vector<Task> stack;
  {
    Task root{std::vector<LeafId>(n), triples.items(), kNoVertex};
    for (std::size_t i = 0; i < n; ++i) root.leaves[i] = static_cast<LeafId>(i);
    stack.push_back(std::move(root));
  }

  std::vector<std::uint32_t> component_of_root;
  while (!stack.empty()) {
    Task task = std::move(stack.back());
    stack.pop_back();
    const std::size_t size = task.leaves.size();
    if (size == 1) {
      add_vertex(task.parent, task.leaves.front());
      continue;
    }

    for (std::size_t j = 0; j < size; ++j) local[static_cast<std::size_t>(task.leaves[j])] = static_cast<std::uint32_t>(j);
    DisjointSets sets(size);
    for (const auto& tr : task.triples)
      sets.unite(local[static_cast<std::size_t>(tr.x)], local[static_cast<std::size_t>(tr.y)]);

    // Components numbered by first appearance in the leaf list.
    component_of_root.assign(size, UINT32_MAX);
    std::vector<std::uint32_t> component(size);
    std::uint32_t n_components = 0;
    for (std::size_t j = 0; j < size; ++j) {
      auto r = sets.find(static_cast<std::uint32_t>(j));
      if (component_of_root[r] == UINT32_MAX) component_of_root[r] = n_components++;
      component[j] = component_of_root[r];
    }
    if (n_components == 1) return std::nullopt;

    VertexId inner = add_vertex(task.parent, kNoLeaf);
    std::vector<Task> parts(n_components);
    for (auto& p : parts) p.parent = inner;
    for (std::size_t j = 0; j < size; ++j) parts[component[j]].leaves.push_back(task.leaves[j]);
    for (const auto& tr : task.triples) {
      auto cx = component[local[static_cast<std::size_t>(tr.x)]];
      if (component[local[static_cast<std::size_t>(tr.z)]] == cx) parts[cx].triples.push_back(tr);
    }
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) stack.push_back(std::move(*it));
  }
  return Tree(std::move(leaves), std::move(out), 0);
}

RefineOutcome build_refine(std::span<const Tree> inputs) {
  validate_instance(inputs);
  std::vector<Triple> all;
  for (const auto& t : inputs) {
    auto r = representative_triples(t);
    all.insert(all.end(), r.begin(), r.end());
  }
  TripleSet triples(std::move(all));
  auto result = build(triples, inputs.front().index_ptr());
  if (!result) {
    return Incompatible{IncompatibleReason::kInconsistentTriples,
                        "union of " + std::to_string(triples.size()) + " representative triples is inconsistent"};
  }
  std::vector<Correspondence> corrs;
  corrs.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    corrs.push_back(cluster_correspondence(inputs[i], *result));
    if (!check_display(*result, inputs[i], corrs.back())) {
      return Incompatible{IncompatibleReason::kDisplayCheckFailed,
                          "BUILD tree does not display input " + std::to_string(i + 1)};
    }
  }
  return Refined{std::move(*result), std::move(corrs)};
}

void write_triples(std::ostream& out, const TripleSet& triples, const LeafIndex& index) {
  for (const auto& t : triples) out << index.label(t.x) << ' ' << index.label(t.y) << " | " << index.label(t.z) << '\n';
}

}  // namespace refinery
