#include "refinery/outcome.hpp"

namespace refinery {

std::string_view to_string(IncompatibleReason reason) {
  switch (reason) {
    case IncompatibleReason::kParentNotStrictlySmaller: return "parent-not-strictly-smaller";
    case IncompatibleReason::kTooManyVertices: return "too-many-vertices";
    case IncompatibleReason::kNotPhylogenetic: return "not-phylogenetic";
    case IncompatibleReason::kDisplayCheckFailed: return "display-check-failed";
    case IncompatibleReason::kCorruptCorrespondence: return "corrupt-correspondence";
    case IncompatibleReason::kNotHierarchy: return "not-a-hierarchy";
    case IncompatibleReason::kInconsistentTriples: return "inconsistent-triples";
  }
  return "unknown";
}

void validate_instance(std::span<const Tree> inputs) {
  if (inputs.empty()) throw InputError("no input trees");
  const auto& index = inputs.front().index_ptr();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& t = inputs[i];
    if (t.index_ptr() != index && !(t.index() == *index))
      throw InputError("tree " + std::to_string(i + 1) + " uses a different leaf index");
    if (!t.covers_index())
      throw InputError("tree " + std::to_string(i + 1) + " does not cover the common leaf set (" +
                       std::to_string(t.n_leaves()) + " of " + std::to_string(index->size()) + " leaves)");
    if (!is_phylogenetic(t)) throw InputError("tree " + std::to_string(i + 1) + " is not phylogenetic");
  }
}

}  // namespace refinery
