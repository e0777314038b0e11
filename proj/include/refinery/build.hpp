#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "refinery/outcome.hpp"

namespace refinery {

// Rooted triple xy|z with x < y.
struct Triple {
  LeafId x;
  LeafId y;
  LeafId z;

  static Triple make(LeafId a, LeafId b, LeafId z) { return a < b ? Triple{a, b, z} : Triple{b, a, z}; }
  auto operator<=>(const Triple&) const = default;
};

// Deduplicated, sorted.
class TripleSet {
 public:
  TripleSet() = default;
  explicit TripleSet(std::vector<Triple> triples);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(const Triple& t) const;
  bool is_subset_of(const TripleSet& other) const;
  const std::vector<Triple>& items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const TripleSet&) const = default;

 private:
  std::vector<Triple> items_;
};

// Triples that force every cluster of t in any tree displaying them: for each
// non-root inner vertex v and each sibling s of v, chains the smallest leaves
// of consecutive children of v against the smallest leaf under s. n-2 triples
// for binary trees, quadratic in n for trees with high-degree vertices.
TripleSet representative_triples(const Tree& t);

// Every triple displayed by t. O(n³); for tests.
TripleSet all_triples(const Tree& t);

// Aho et al. BUILD. nullopt when the triples are inconsistent.
std::optional<Tree> build(const TripleSet& triples, std::shared_ptr<const LeafIndex> leaves);

// BUILD on the union of representative triples, then a display check of
// every input against the result.
RefineOutcome build_refine(std::span<const Tree> inputs);

// One "x y | z" line per triple, using leaf labels.
void write_triples(std::ostream& out, const TripleSet& triples, const LeafIndex& index);

}  // namespace refinery
