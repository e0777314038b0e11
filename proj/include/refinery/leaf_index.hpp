#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace refinery {

using LeafId = std::int32_t;
inline constexpr LeafId kNoLeaf = -1;

// Bijection between leaf labels and dense ids 0..n-1. All trees of one
// instance share a single index.
class LeafIndex {
 public:
  LeafIndex() = default;
  explicit LeafIndex(const std::vector<std::string>& labels);

  // Registers a new label and returns its id; throws if already present.
  LeafId add(std::string_view label);
  std::optional<LeafId> find(std::string_view label) const;
  LeafId id_of(std::string_view label) const;

  const std::string& label(LeafId id) const { return labels_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const LeafIndex& other) const { return labels_ == other.labels_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, LeafId, Hash, std::equal_to<>> ids_;
  std::vector<std::string> labels_;
};

}  // namespace refinery
