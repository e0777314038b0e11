#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refinery/tree.hpp"

namespace refinery {

class NewickError : public std::runtime_error {
 public:
  NewickError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at column " + std::to_string(offset + 1)), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  std::size_t column() const { return offset_ + 1; }

 private:
  std::size_t offset_;
};

enum class LabelPolicy {
  kRegister,  // unknown labels are added to the index
  kExisting,  // every label must already be in the index
};

struct NewickOptions {
  bool strict_phylogenetic = false;
  LabelPolicy labels = LabelPolicy::kRegister;
};

// Parses one Newick expression. Inner labels and branch lengths are accepted
// and discarded, bracket comments are skipped, the trailing ';' is optional.
// Child order follows the input. The index is only modified on success.
Tree parse_newick(std::string_view text, const std::shared_ptr<LeafIndex>& index, NewickOptions options = {});
Tree parse_newick(std::string_view text, NewickOptions options = {});

// Canonical form: children ordered by their smallest leaf label, no branch
// lengths, terminal ';'. Two trees on the same labels are isomorphic iff
// their canonical strings are equal.
std::string to_newick(const Tree& t);

// Parses trees from a line stream (one tree per non-blank line) into a shared
// index. Errors are rethrown as std::runtime_error prefixed "source:line:col".
std::vector<Tree> read_newick_lines(std::istream& in, const std::string& source,
                                    const std::shared_ptr<LeafIndex>& index, NewickOptions options = {});

}  // namespace refinery
