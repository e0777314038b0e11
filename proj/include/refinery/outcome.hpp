#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "refinery/display.hpp"
#include "refinery/tree.hpp"

namespace refinery {

// Inputs violate a precondition (different leaf sets, non-phylogenetic
// trees). Distinct from an incompatible but well-formed instance.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class IncompatibleReason {
  kParentNotStrictlySmaller,
  kTooManyVertices,
  kNotPhylogenetic,
  kDisplayCheckFailed,
  kCorruptCorrespondence,
  kNotHierarchy,         // cluster union has an overlapping pair
  kInconsistentTriples,  // BUILD found a connected Aho graph
};

std::string_view to_string(IncompatibleReason reason);

struct Refined {
  Tree tree;
  // One per input; A = input tree, B = refined tree.
  std::vector<Correspondence> correspondences;
};

struct Incompatible {
  IncompatibleReason reason;
  std::string detail;
};

class RefineOutcome {
 public:
  RefineOutcome(Refined r) : value_(std::move(r)) {}
  RefineOutcome(Incompatible i) : value_(std::move(i)) {}

  bool is_refined() const { return std::holds_alternative<Refined>(value_); }
  explicit operator bool() const { return is_refined(); }

  const Refined& refined() const { return std::get<Refined>(value_); }
  const Tree& tree() const { return refined().tree; }
  const Incompatible& incompatible() const { return std::get<Incompatible>(value_); }
  IncompatibleReason reason() const { return incompatible().reason; }

 private:
  std::variant<Refined, Incompatible> value_;
};

// Throws InputError unless every tree is phylogenetic, covers its whole leaf
// index, and all trees share one index.
void validate_instance(std::span<const Tree> inputs);

}  // namespace refinery
