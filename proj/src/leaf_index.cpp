#include "refinery/leaf_index.hpp"

#include <stdexcept>

namespace refinery {

LeafIndex::LeafIndex(const std::vector<std::string>& labels) {
  for (const auto& l : labels) add(l);
}

LeafId LeafIndex::add(std::string_view label) {
  if (label.empty()) throw std::invalid_argument("empty leaf label");
  auto id = static_cast<LeafId>(labels_.size());
  auto [it, inserted] = ids_.emplace(std::string(label), id);
  if (!inserted) throw std::invalid_argument("duplicate leaf label '" + std::string(label) + "'");
  labels_.emplace_back(label);
  return id;
}

std::optional<LeafId> LeafIndex::find(std::string_view label) const {
  auto it = ids_.find(label);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

LeafId LeafIndex::id_of(std::string_view label) const {
  if (auto id = find(label)) return *id;
  throw std::out_of_range("unknown leaf label '" + std::string(label) + "'");
}

}  // namespace refinery
