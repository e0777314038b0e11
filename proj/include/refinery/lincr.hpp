#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "refinery/cluster.hpp"
#include "refinery/outcome.hpp"
#include "refinery/tree.hpp"

namespace refinery {

// Set of input-tree indices 0..k-1. A single machine word when k <= 64,
// a sorted index list otherwise; both answer the same queries.
class TreeIndexSet {
 public:
  TreeIndexSet() = default;
  explicit TreeIndexSet(std::size_t k) : k_(static_cast<std::uint32_t>(k)) {}
  static TreeIndexSet all(std::size_t k);

  bool wide() const { return k_ > 64; }
  std::size_t universe() const { return k_; }

  void clear() {
    mask_ = 0;
    list_.clear();
  }
  // Assumes i is larger than every index already present.
  void push_back(std::size_t i) {
    if (wide())
      list_.push_back(static_cast<std::uint32_t>(i));
    else
      mask_ |= std::uint64_t{1} << i;
  }
  bool contains(std::size_t i) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_full() const { return size() == k_; }
  std::vector<std::size_t> to_vector() const;

  template <class F>
  void for_each(F&& f) const {
    if (wide()) {
      for (auto i : list_) f(static_cast<std::size_t>(i));
      return;
    }
    for (std::uint64_t m = mask_; m; m &= m - 1) f(static_cast<std::size_t>(std::countr_zero(m)));
  }

  bool operator==(const TreeIndexSet& other) const {
    return k_ == other.k_ && mask_ == other.mask_ && list_ == other.list_;
  }

  // Membership for a non-decreasing sequence of queries in amortized O(1).
  class Scanner {
   public:
    explicit Scanner(const TreeIndexSet& set) : set_(&set) {}
    bool contains(std::size_t i) {
      if (!set_->wide()) return (set_->mask_ >> i) & 1U;
      const auto& l = set_->list_;
      while (pos_ < l.size() && l[pos_] < i) ++pos_;
      return pos_ < l.size() && l[pos_] == i;
    }

   private:
    const TreeIndexSet* set_;
    std::size_t pos_ = 0;
  };

 private:
  std::uint32_t k_ = 0;
  std::uint64_t mask_ = 0;
  std::vector<std::uint32_t> list_;
};

enum class Execution { kSerial, kOpenMP };

struct LinCROptions {
  // Take a binary input as the candidate when one exists.
  bool binary_shortcut = false;
  // Check that every parent candidate set is a chain under inclusion.
  // Costs O(k·n²/64); meant for tests on compatible inputs.
  bool check_comparability = false;
  Execution execution = Execution::kSerial;
};

struct LinCRStats {
  std::size_t enqueued = 0;           // vertices ever enqueued, leaves included
  std::size_t max_enqueue_count = 0;  // most times any single vertex was enqueued
  std::size_t select_iterations = 0;  // inner steps of the parent minimum
  std::size_t candidates = 0;         // candidate vertices including the root
  std::size_t comparability_violations = 0;
};

using CandidateId = std::int32_t;

namespace kernels {

// Per input vertex: parent, leaf count, and the candidate it corresponds to
// (-1 while unset).
struct VertexSlot {
  VertexId parent = kNoVertex;
  std::int32_t count = 0;
  CandidateId candidate = -1;

  bool operator==(const VertexSlot&) const = default;
};

// All input trees flattened into one array; tree i occupies
// [offsets[i], offsets[i + 1]).
struct TreeTables {
  std::vector<std::size_t> offsets;
  std::vector<VertexSlot> slots;

  VertexSlot& at(std::size_t i, VertexId x) { return slots[offsets[i] + static_cast<std::size_t>(x)]; }
  const VertexSlot& at(std::size_t i, VertexId x) const { return slots[offsets[i] + static_cast<std::size_t>(x)]; }
};

}  // namespace kernels

// Result of the parent minimum for one dequeued vertex.
struct ParentChoice {
  std::size_t tree = 0;           // first tree achieving the minimum
  VertexId vertex = kNoVertex;    // the minimizing vertex in that tree
  std::int32_t min_count = 0;     // its leaf count
  TreeIndexSet members;           // every tree achieving the minimum
};

// Working state of the bottom-up refinement. Candidate ids: leaves use their
// leaf id (0..n-1), the root is n, inner vertices follow in creation order.
class RefinementState {
 public:
  // Precomputes leaf counts and enqueues all leaves in the order they appear
  // in the first input. Inputs must satisfy validate_instance with n >= 2.
  explicit RefinementState(std::span<const Tree> inputs, const LinCROptions& options = {});
  explicit RefinementState(std::vector<const Tree*> inputs, const LinCROptions& options = {});

  std::size_t k() const { return inputs_.size(); }
  std::size_t n() const { return n_; }
  CandidateId root() const { return static_cast<CandidateId>(n_); }
  std::size_t candidate_count() const { return count_.size(); }
  // |V|: vertices ever enqueued.
  std::size_t visited() const { return stats_.enqueued; }

  std::int32_t count(CandidateId v) const { return count_[static_cast<std::size_t>(v)]; }
  const TreeIndexSet& members(CandidateId v) const { return members_[static_cast<std::size_t>(v)]; }
  // p_i(v): the smallest vertex of tree i whose cluster contains v's cluster.
  VertexId image(CandidateId v, std::size_t i) const { return image_[static_cast<std::size_t>(v) * k() + i]; }
  CandidateId parent(CandidateId v) const { return parent_[static_cast<std::size_t>(v)]; }
  CandidateId candidate_of(std::size_t i, VertexId x) const { return tables_.at(i, x).candidate; }
  std::int32_t input_count(std::size_t i, VertexId x) const { return tables_.at(i, x).count; }
  std::span<const CandidateId> pending() const {
    return std::span<const CandidateId>(queue_).subspan(head_);
  }
  std::size_t enqueue_count(CandidateId v) const { return enqueue_count_[static_cast<std::size_t>(v)]; }

  bool done() const { return head_ == queue_.size(); }

  // Parent minimum over the k trees by leaf count. The per-tree candidates of
  // the last call are available through last_candidates().
  ParentChoice select_parent(CandidateId v);
  std::span<const VertexId> last_candidates() const { return frontier_; }

  // Fills p(u) from the already final J(u) and the state of child v. For
  // trees in J(u) the image is taken from the last select_parent call.
  void update_p(CandidateId u, CandidateId v);

  // Dequeues and processes one vertex; an incompatibility ends the run.
  std::optional<Incompatible> step();

  // Runs remaining steps, materializes the candidate tree and verifies it.
  RefineOutcome finish();

  const LinCRStats& stats() const { return stats_; }

 private:
  CandidateId new_candidate(std::int32_t count, TreeIndexSet members);
  void enqueue(CandidateId v);
  void check_chain(CandidateId v);

  std::vector<const Tree*> inputs_;
  LinCROptions options_;
  std::size_t n_ = 0;
  kernels::TreeTables tables_;

  std::vector<std::int32_t> count_;
  std::vector<TreeIndexSet> members_;
  std::vector<VertexId> image_;  // candidate-major, k entries each
  std::vector<CandidateId> parent_;

  std::vector<CandidateId> queue_;
  std::size_t head_ = 0;
  std::vector<std::uint32_t> enqueue_count_;

  std::vector<VertexId> frontier_;
  LinCRStats stats_;

  // Only with check_comparability.
  std::vector<std::vector<Cluster>> input_clusters_;
};

// Minimal common refinement of trees on one leaf set in O(k·n). Throws
// InputError if the inputs do not share a leaf set or are not phylogenetic.
RefineOutcome lincr_refine(std::span<const Tree> inputs, const LinCROptions& options = {},
                           LinCRStats* stats = nullptr);

// Fast path when some input is binary (2n-1 vertices): that input is the only
// possible refinement, and each other input is checked against it through a
// two-tree run. nullopt when no input is binary.
std::optional<RefineOutcome> binary_shortcut(std::span<const Tree> inputs, LinCRStats* stats = nullptr);

// Per-tree kernels of the refinement. The serial versions are the reference
// the OpenMP versions are tested against.
namespace kernels {

using TreeRefs = std::span<const Tree* const>;

// Parent and leaf-count tables of every input. Leaves and the root are
// already mapped to their candidates; all other entries are unset.
TreeTables tree_tables_serial(TreeRefs trees);
TreeTables tree_tables_omp(TreeRefs trees);

// Index of the first input not displayed by t, or nullopt when all are.
std::optional<std::size_t> first_undisplayed_serial(const Tree& t, TreeRefs inputs,
                                                     std::span<const Correspondence> corrs);
std::optional<std::size_t> first_undisplayed_omp(const Tree& t, TreeRefs inputs,
                                                  std::span<const Correspondence> corrs);

}  // namespace kernels

}  // namespace refinery
