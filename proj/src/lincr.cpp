#include "refinery/lincr.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace refinery {

TreeIndexSet TreeIndexSet::all(std::size_t k) {
  TreeIndexSet s(k);
  if (s.wide()) {
    s.list_.resize(k);
    for (std::size_t i = 0; i < k; ++i) s.list_[i] = static_cast<std::uint32_t>(i);
  } else {
    s.mask_ = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  }
  return s;
}

bool TreeIndexSet::contains(std::size_t i) const {
  if (!wide()) return i < 64 && ((mask_ >> i) & 1U);
  return std::binary_search(list_.begin(), list_.end(), static_cast<std::uint32_t>(i));
}

std::size_t TreeIndexSet::size() const {
  return wide() ? list_.size() : static_cast<std::size_t>(std::popcount(mask_));
}

std::vector<std::size_t> TreeIndexSet::to_vector() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

namespace {

std::vector<const Tree*> refs_of(std::span<const Tree> trees) {
  std::vector<const Tree*> out;
  out.reserve(trees.size());
  for (const auto& t : trees) out.push_back(&t);
  return out;
}

Correspondence identity_correspondence(const Tree& t) {
  Correspondence c(t.size(), t.size());
  for (std::size_t v = 0; v < t.size(); ++v) c.link(static_cast<VertexId>(v), static_cast<VertexId>(v));
  return c;
}

}  // namespace

RefinementState::RefinementState(std::span<const Tree> inputs, const LinCROptions& options)
    : RefinementState(refs_of(inputs), options) {}

RefinementState::RefinementState(std::vector<const Tree*> inputs, const LinCROptions& options)
    : inputs_(std::move(inputs)), options_(options) {
  if (inputs_.empty()) throw InputError("no input trees");
  n_ = inputs_.front()->n_leaves();
  if (n_ < 2) throw InputError("refinement state needs at least two leaves");
  const std::size_t k = inputs_.size();

  tables_ = options_.execution == Execution::kOpenMP ? kernels::tree_tables_omp(inputs_)
                                                    : kernels::tree_tables_serial(inputs_);

  // A tree on n leaves has at most 2n-1 vertices.
  const std::size_t capacity = 2 * n_;
  count_.reserve(capacity);
  members_.reserve(capacity);
  image_.reserve(capacity * k);
  parent_.reserve(capacity);
  enqueue_count_.reserve(capacity);
  queue_.reserve(capacity);
  frontier_.assign(k, kNoVertex);

  const auto all = TreeIndexSet::all(k);
  for (std::size_t x = 0; x <= n_; ++x) new_candidate(x < n_ ? 1 : static_cast<std::int32_t>(n_), all);
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t i = 0; i < k; ++i) image_[x * k + i] = inputs_[i]->leaf_vertex(static_cast<LeafId>(x));
  }
  for (std::size_t i = 0; i < k; ++i) image_[n_ * k + i] = inputs_[i]->root();
  for (VertexId v : inputs_.front()->preorder())
    if (inputs_.front()->is_leaf(v)) enqueue(static_cast<CandidateId>(inputs_.front()->leaf_id(v)));

  if (options_.check_comparability) {
    input_clusters_.reserve(k);
    for (const Tree* t : inputs_) input_clusters_.push_back(vertex_clusters(*t));
  }
}

CandidateId RefinementState::new_candidate(std::int32_t count, TreeIndexSet members) {
  auto id = static_cast<CandidateId>(count_.size());
  count_.push_back(count);
  members_.push_back(std::move(members));
  parent_.push_back(-1);
  enqueue_count_.push_back(0);
  image_.resize(image_.size() + k(), kNoVertex);
  ++stats_.candidates;
  return id;
}

void RefinementState::enqueue(CandidateId v) {
  queue_.push_back(v);
  ++stats_.enqueued;
  auto& c = enqueue_count_[static_cast<std::size_t>(v)];
  ++c;
  stats_.max_enqueue_count = std::max<std::size_t>(stats_.max_enqueue_count, c);
}

ParentChoice RefinementState::select_parent(CandidateId v) {
  const std::size_t k = this->k();
  ParentChoice choice;
  choice.members = TreeIndexSet(k);
  choice.min_count = static_cast<std::int32_t>(n_);
  bool first = true;
  TreeIndexSet::Scanner in_v(members(v));
  const VertexId* img = &image_[static_cast<std::size_t>(v) * k];
  for (std::size_t i = 0; i < k; ++i) {
    // A tree containing v contributes v's parent there; any other tree
    // contributes the smallest vertex above v's cluster.
    const kernels::VertexSlot* table = tables_.slots.data() + tables_.offsets[i];
    VertexId cand = in_v.contains(i) ? table[img[i]].parent : img[i];
    assert(cand != kNoVertex);
    frontier_[i] = cand;
    ++stats_.select_iterations;
    std::int32_t c = table[cand].count;
    if (first || c < choice.min_count) {
      choice.tree = i;
      choice.vertex = cand;
      choice.min_count = c;
      choice.members.clear();
      choice.members.push_back(i);
      first = false;
    } else if (c == choice.min_count) {
      choice.members.push_back(i);
    }
  }
  if (options_.check_comparability) check_chain(v);
  return choice;
}

void RefinementState::check_chain(CandidateId v) {
  std::vector<const Cluster*> chain;
  chain.reserve(k() + 1);
  std::size_t owner = members(v).to_vector().front();
  chain.push_back(&input_clusters_[owner][static_cast<std::size_t>(image(v, owner))]);
  for (std::size_t i = 0; i < k(); ++i) chain.push_back(&input_clusters_[i][static_cast<std::size_t>(frontier_[i])]);
  std::sort(chain.begin(), chain.end(),
            [](const Cluster* a, const Cluster* b) { return a->cardinality() < b->cardinality(); });
  for (std::size_t j = 1; j < chain.size(); ++j) {
    if (!chain[j - 1]->is_subset_of(*chain[j])) {
      ++stats_.comparability_violations;
      return;
    }
  }
}

void RefinementState::update_p(CandidateId u, CandidateId v) {
  const std::size_t k = this->k();
  TreeIndexSet::Scanner in_u(members(u));
  TreeIndexSet::Scanner in_v(members(v));
  VertexId* pu = &image_[static_cast<std::size_t>(u) * k];
  const VertexId* pv = &image_[static_cast<std::size_t>(v) * k];
  for (std::size_t i = 0; i < k; ++i) {
    if (in_u.contains(i)) {
      pu[i] = frontier_[i];
    } else if (in_v.contains(i)) {
      pu[i] = tables_.at(i, pv[i]).parent;
    } else {
      pu[i] = pv[i];
    }
  }
}

std::optional<Incompatible> RefinementState::step() {
  CandidateId v = queue_[head_++];
  ParentChoice choice = select_parent(v);
  if (!(count(v) < choice.min_count)) {
    return Incompatible{IncompatibleReason::kParentNotStrictlySmaller,
                        "candidate parent of a vertex with " + std::to_string(count(v)) + " leaves has " +
                            std::to_string(choice.min_count)};
  }

  CandidateId u;
  if (choice.min_count == static_cast<std::int32_t>(n_)) {
    u = root();
  } else {
    // u is already known iff its correspondence entries are set.
    CandidateId existing = -1;
    bool any_set = false;
    bool any_unset = false;
    bool conflict = false;
    choice.members.for_each([&](std::size_t i) {
      CandidateId c = tables_.at(i, frontier_[i]).candidate;
      if (c < 0) {
        any_unset = true;
      } else {
        if (any_set && c != existing) conflict = true;
        existing = c;
        any_set = true;
      }
    });
    if (conflict || (any_set && any_unset)) {
      return Incompatible{IncompatibleReason::kCorruptCorrespondence,
                          "trees with equal-size parent candidates disagree on its identity"};
    }
    if (any_set) {
      u = existing;
    } else {
      if (visited() + 1 > 2 * n_ - 2) {
        return Incompatible{IncompatibleReason::kTooManyVertices,
                            "more than " + std::to_string(2 * n_ - 2) + " non-root vertices"};
      }
      u = new_candidate(choice.min_count, std::move(choice.members));
      update_p(u, v);
      members(u).for_each([&](std::size_t i) { tables_.at(i, image(u, i)).candidate = u; });
      enqueue(u);
    }
  }
  parent_[static_cast<std::size_t>(v)] = u;
  return std::nullopt;
}

RefineOutcome RefinementState::finish() {
  while (!done()) {
    if (auto incompatible = step()) return std::move(*incompatible);
  }

  const std::size_t m = candidate_count();
  std::vector<LeafId> leaf_of(m, kNoLeaf);
  for (std::size_t x = 0; x < n_; ++x) leaf_of[x] = static_cast<LeafId>(x);
  Tree t = Tree::from_parents(inputs_.front()->index_ptr(), parent_, leaf_of);

  if (!is_phylogenetic(t)) return Incompatible{IncompatibleReason::kNotPhylogenetic, "candidate has a unary vertex"};

  const std::size_t k = this->k();
  std::vector<Correspondence> corrs(k);
  for (std::size_t i = 0; i < k; ++i) {
    corrs[i].a_to_b.resize(inputs_[i]->size());
    for (std::size_t x = 0; x < inputs_[i]->size(); ++x)
      corrs[i].a_to_b[x] = tables_.slots[tables_.offsets[i] + x].candidate;
    corrs[i].b_to_a.assign(m, kNoVertex);
  }
  for (std::size_t v = 0; v < m; ++v) {
    members_[v].for_each([&](std::size_t i) { corrs[i].b_to_a[v] = image_[v * k + i]; });
  }

  auto failed = options_.execution == Execution::kOpenMP ? kernels::first_undisplayed_omp(t, inputs_, corrs)
                                                         : kernels::first_undisplayed_serial(t, inputs_, corrs);
  if (failed) {
    return Incompatible{IncompatibleReason::kDisplayCheckFailed,
                        "candidate does not display input " + std::to_string(*failed + 1)};
  }
  return Refined{std::move(t), std::move(corrs)};
}

RefineOutcome lincr_refine(std::span<const Tree> inputs, const LinCROptions& options, LinCRStats* stats) {
  validate_instance(inputs);
  if (stats) *stats = {};
  if (inputs.size() == 1 || inputs.front().n_leaves() == 1) {
    std::vector<Correspondence> corrs;
    for (const auto& t : inputs) corrs.push_back(identity_correspondence(t));
    return Refined{inputs.front(), std::move(corrs)};
  }
  if (options.binary_shortcut) {
    if (auto out = binary_shortcut(inputs, stats)) return std::move(*out);
  }
  RefinementState state(inputs, options);
  auto out = state.finish();
  if (stats) *stats = state.stats();
  return out;
}

std::optional<RefineOutcome> binary_shortcut(std::span<const Tree> inputs, LinCRStats* stats) {
  validate_instance(inputs);
  const std::size_t n = inputs.front().n_leaves();
  auto binary = std::find_if(inputs.begin(), inputs.end(), [&](const Tree& t) { return t.size() == 2 * n - 1; });
  if (binary == inputs.end()) return std::nullopt;
  const Tree& candidate = *binary;
  const auto j = static_cast<std::size_t>(binary - inputs.begin());

  if (stats) *stats = {};
  std::vector<Correspondence> corrs(inputs.size());
  corrs[j] = identity_correspondence(candidate);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i == j) continue;
    if (n == 1) {
      corrs[i] = identity_correspondence(inputs[i]);
      continue;
    }
    // The pair's refinement can only be the binary tree itself, so the run
    // doubles as the display check and yields the correspondence.
    RefinementState pair(std::vector<const Tree*>{&candidate, &inputs[i]});
    auto out = pair.finish();
    if (stats) {
      stats->enqueued += pair.stats().enqueued;
      stats->select_iterations += pair.stats().select_iterations;
      stats->candidates += pair.stats().candidates;
      stats->max_enqueue_count = std::max(stats->max_enqueue_count, pair.stats().max_enqueue_count);
    }
    if (!out.is_refined()) return out;
    const auto& to_pair = out.refined().correspondences;
    if (out.tree().size() != candidate.size()) {
      return RefineOutcome(Incompatible{IncompatibleReason::kDisplayCheckFailed, "binary candidate was refined further"});
    }
    Correspondence c(inputs[i].size(), candidate.size());
    for (std::size_t w = 0; w < inputs[i].size(); ++w) {
      VertexId x = to_pair[1].a_to_b[w];
      VertexId y = to_pair[0].b_to_a[static_cast<std::size_t>(x)];
      c.link(static_cast<VertexId>(w), y);
    }
    corrs[i] = std::move(c);
  }
  return RefineOutcome(Refined{candidate, std::move(corrs)});
}

}  // namespace refinery
