#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "refinery/tree.hpp"

namespace refinery {

// Leaf set as a fixed-width bitset over leaf ids, with cached cardinality.
class Cluster {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Cluster() = default;
  explicit Cluster(std::size_t n_bits) : n_bits_(n_bits), words_((n_bits + kWordBits - 1) / kWordBits, 0) {}

  static Cluster singleton(std::size_t n_bits, LeafId leaf) {
    Cluster c(n_bits);
    c.set(leaf);
    return c;
  }

  void set(LeafId leaf) {
    auto& w = words_[static_cast<std::size_t>(leaf) / kWordBits];
    Word bit = Word{1} << (static_cast<std::size_t>(leaf) % kWordBits);
    if (!(w & bit)) {
      w |= bit;
      ++count_;
    }
  }
  bool test(LeafId leaf) const {
    return (words_[static_cast<std::size_t>(leaf) / kWordBits] >> (static_cast<std::size_t>(leaf) % kWordBits)) & 1U;
  }

  Cluster& operator|=(const Cluster& other);

  std::size_t cardinality() const { return count_; }
  std::size_t n_bits() const { return n_bits_; }
  const std::vector<Word>& words() const { return words_; }

  bool is_subset_of(const Cluster& other) const;
  bool intersects(const Cluster& other) const;
  // A ∩ B ∈ {A, B, ∅}.
  bool compatible_with(const Cluster& other) const;

  // Smallest leaf id in the set; kNoLeaf when empty.
  LeafId first() const;
  std::vector<LeafId> members() const;

  bool operator==(const Cluster& other) const { return count_ == other.count_ && words_ == other.words_; }

  // Lexicographic over leaf ids: the set containing the first differing id sorts first.
  bool lex_less(const Cluster& other) const;

  std::size_t hash() const;

 private:
  std::size_t n_bits_ = 0;
  std::vector<Word> words_;
  std::size_t count_ = 0;
};

struct ClusterHash {
  std::size_t operator()(const Cluster& c) const { return c.hash(); }
};

// Cardinality descending, then lexicographic.
bool canonical_less(const Cluster& a, const Cluster& b);

// Deduplicated, canonically sorted collection of clusters.
class ClusterSet {
 public:
  ClusterSet() = default;
  explicit ClusterSet(std::vector<Cluster> clusters);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(const Cluster& c) const;
  bool is_subset_of(const ClusterSet& other) const;

  const Cluster& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<Cluster>& items() const { return items_; }

  bool operator==(const ClusterSet& other) const { return items_ == other.items_; }

 private:
  std::vector<Cluster> items_;
};

// One cluster per vertex, indexed by vertex id, built bottom-up by union.
std::vector<Cluster> vertex_clusters(const Tree& t);

// The hierarchy of t, deduplicated.
ClusterSet clusters(const Tree& t);

// "{a,b,c}" using leaf labels.
std::string format_cluster(const Cluster& c, const LeafIndex& index);

}  // namespace refinery
