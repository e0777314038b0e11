#include "refinery/cluster.hpp"

#include <algorithm>

namespace refinery {

Cluster& Cluster::operator|=(const Cluster& other) {
  count_ = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] |= other.words_[i];
    count_ += static_cast<std::size_t>(std::popcount(words_[i]));
  }
  return *this;
}

bool Cluster::is_subset_of(const Cluster& other) const {
  if (count_ > other.count_) return false;
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool Cluster::intersects(const Cluster& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & other.words_[i]) return true;
  return false;
}

bool Cluster::compatible_with(const Cluster& other) const {
  bool inter = false;
  bool a_minus_b = false;
  bool b_minus_a = false;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    inter |= (words_[i] & other.words_[i]) != 0;
    a_minus_b |= (words_[i] & ~other.words_[i]) != 0;
    b_minus_a |= (other.words_[i] & ~words_[i]) != 0;
  }
  return !inter || !a_minus_b || !b_minus_a;
}

LeafId Cluster::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<LeafId>(i * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[i])));
  return kNoLeaf;
}

std::vector<LeafId> Cluster::members() const {
  std::vector<LeafId> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    Word w = words_[i];
    while (w) {
      out.push_back(static_cast<LeafId>(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

bool Cluster::lex_less(const Cluster& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    Word diff = words_[i] ^ other.words_[i];
    if (diff) {
      Word lowest = diff & (~diff + 1);
      return (words_[i] & lowest) != 0;
    }
  }
  return false;
}

std::size_t Cluster::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ count_;
  for (Word w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool canonical_less(const Cluster& a, const Cluster& b) {
  if (a.cardinality() != b.cardinality()) return a.cardinality() > b.cardinality();
  return a.lex_less(b);
}

ClusterSet::ClusterSet(std::vector<Cluster> clusters) : items_(std::move(clusters)) {
  std::sort(items_.begin(), items_.end(), canonical_less);
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool ClusterSet::contains(const Cluster& c) const {
  return std::binary_search(items_.begin(), items_.end(), c, canonical_less);
}

bool ClusterSet::is_subset_of(const ClusterSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end(), canonical_less);
}

std::vector<Cluster> vertex_clusters(const Tree& t) {
  const auto n = t.index().size();
  std::vector<Cluster> out(t.size(), Cluster(n));
  for (VertexId v : t.postorder()) {
    auto& c = out[static_cast<std::size_t>(v)];
    if (t.is_leaf(v)) {
      c.set(t.leaf_id(v));
    } else {
      for (VertexId ch : t.children(v)) c |= out[static_cast<std::size_t>(ch)];
    }
  }
  return out;
}

ClusterSet clusters(const Tree& t) { return ClusterSet(vertex_clusters(t)); }

std::string format_cluster(const Cluster& c, const LeafIndex& index) {
  std::vector<std::string> names;
  for (LeafId id : c.members()) names.push_back(index.label(id));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out + "}";
}

}  // namespace refinery
