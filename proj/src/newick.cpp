#include "refinery/newick.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <unordered_set>

namespace refinery {
namespace {

bool is_label_char(char c) {
  switch (c) {
    case '(': case ')': case ',': case ':': case ';': case '[': case ']': case '\'':
      return false;
    default:
      return !std::isspace(static_cast<unsigned char>(c));
  }
}

struct RawVertex {
  VertexId parent = kNoVertex;
  std::vector<VertexId> children;
  std::string label;
  bool is_leaf = false;
  std::size_t offset = 0;
};

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  std::vector<RawVertex> parse() {
    std::vector<VertexId> open;
    skip_space();
    if (pos_ >= text_.size() || peek() == ';') throw NewickError("empty tree", pos_);

    for (;;) {
      // Element start: either a new inner vertex or a leaf label.
      skip_space();
      VertexId current;
      if (peek() == '(') {
        current = add_vertex(open, false);
        open.push_back(current);
        ++pos_;
        continue;
      }
      std::size_t label_at = pos_;
      std::string label = read_label();
      if (label.empty()) throw NewickError("empty leaf label", label_at);
      current = add_vertex(open, true);
      vertices_[static_cast<std::size_t>(current)].label = std::move(label);
      vertices_[static_cast<std::size_t>(current)].offset = label_at;
      read_branch_length();

      // After an element: separators and closing parentheses.
      for (;;) {
        skip_space();
        char c = peek();
        if (c == ',') {
          if (open.empty()) throw NewickError("unexpected ','", pos_);
          ++pos_;
          break;
        }
        if (c == ')') {
          if (open.empty()) throw NewickError("unbalanced ')'", pos_);
          open.pop_back();
          ++pos_;
          skip_space();
          read_label();  // inner labels are ignored
          read_branch_length();
          continue;
        }
        if (c == ';' || pos_ >= text_.size()) {
          if (!open.empty()) throw NewickError("unbalanced '('", vertices_[static_cast<std::size_t>(open.back())].offset);
          if (c == ';') ++pos_;
          skip_space();
          if (pos_ < text_.size()) throw NewickError("trailing characters after tree", pos_);
          return std::move(vertices_);
        }
        throw NewickError(std::string("unexpected character '") + c + "'", pos_);
      }
    }
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '[') {
        std::size_t start = pos_;
        auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) throw NewickError("unterminated comment", start);
        pos_ = close + 1;
      } else {
        break;
      }
    }
  }

  VertexId add_vertex(const std::vector<VertexId>& open, bool leaf) {
    auto id = static_cast<VertexId>(vertices_.size());
    RawVertex v;
    v.is_leaf = leaf;
    v.offset = pos_;
    if (!open.empty()) {
      v.parent = open.back();
      vertices_[static_cast<std::size_t>(open.back())].children.push_back(id);
    } else if (!vertices_.empty()) {
      throw NewickError("more than one top-level tree", pos_);
    }
    vertices_.push_back(std::move(v));
    return id;
  }

  std::string read_label() {
    std::string out;
    if (peek() == '\'') {
      std::size_t start = pos_++;
      for (;;) {
        if (pos_ >= text_.size()) throw NewickError("unterminated quoted label", start);
        char c = text_[pos_++];
        if (c == '\'') {
          if (peek() == '\'') {
            out += '\'';
            ++pos_;
          } else {
            break;
          }
        } else {
          out += c;
        }
      }
      return out;
    }
    while (pos_ < text_.size() && is_label_char(text_[pos_])) out += text_[pos_++];
    return out;
  }

  void read_branch_length() {
    skip_space();
    if (peek() != ':') return;
    ++pos_;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
    double value = 0.0;
    auto token = text_.substr(start, pos_ - start);
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw NewickError("invalid branch length '" + std::string(token) + "'", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawVertex> vertices_;
};

bool needs_quotes(const std::string& label) {
  return std::any_of(label.begin(), label.end(), [](char c) { return !is_label_char(c); });
}

void append_label(std::string& out, const std::string& label) {
  if (!needs_quotes(label)) {
    out += label;
    return;
  }
  out += '\'';
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
}

}  // namespace

Tree parse_newick(std::string_view text, const std::shared_ptr<LeafIndex>& index, NewickOptions options) {
  auto raw = NewickParser(text).parse();

  std::unordered_set<std::string_view> seen;
  for (const auto& v : raw) {
    if (!v.is_leaf) {
      if (v.children.empty()) throw NewickError("empty leaf label", v.offset);
      if (options.strict_phylogenetic && v.children.size() < 2)
        throw NewickError("inner vertex with fewer than two children", v.offset);
      continue;
    }
    if (!seen.insert(v.label).second) throw NewickError("duplicate leaf label '" + v.label + "'", v.offset);
    if (options.labels == LabelPolicy::kExisting && !index->find(v.label))
      throw NewickError("unknown leaf label '" + v.label + "'", v.offset);
  }

  std::vector<Vertex> vertices(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    vertices[i].parent = raw[i].parent;
    vertices[i].children = std::move(raw[i].children);
    if (raw[i].is_leaf) {
      auto id = index->find(raw[i].label);
      vertices[i].leaf = id ? *id : index->add(raw[i].label);
    }
  }
  return Tree(index, std::move(vertices), 0);
}

Tree parse_newick(std::string_view text, NewickOptions options) {
  return parse_newick(text, std::make_shared<LeafIndex>(), options);
}

std::string to_newick(const Tree& t) {
  const auto& index = t.index();
  // Smallest leaf label below each vertex.
  std::vector<const std::string*> min_label(t.size(), nullptr);
  for (VertexId v : t.postorder()) {
    auto vi = static_cast<std::size_t>(v);
    if (t.is_leaf(v)) {
      min_label[vi] = &index.label(t.leaf_id(v));
      continue;
    }
    for (VertexId c : t.children(v)) {
      const auto* m = min_label[static_cast<std::size_t>(c)];
      if (!min_label[vi] || *m < *min_label[vi]) min_label[vi] = m;
    }
  }

  std::string out;
  struct Frame {
    VertexId v;
    std::vector<VertexId> kids;
    std::size_t next = 0;
  };
  auto sorted_children = [&](VertexId v) {
    auto span = t.children(v);
    std::vector<VertexId> kids(span.begin(), span.end());
    std::sort(kids.begin(), kids.end(), [&](VertexId a, VertexId b) {
      return *min_label[static_cast<std::size_t>(a)] < *min_label[static_cast<std::size_t>(b)];
    });
    return kids;
  };

  std::vector<Frame> stack;
  auto enter = [&](VertexId v) {
    if (t.is_leaf(v)) {
      append_label(out, index.label(t.leaf_id(v)));
    } else {
      out += '(';
      stack.push_back({v, sorted_children(v)});
    }
  };
  enter(t.root());
  while (!stack.empty()) {
    auto& f = stack.back();
    if (f.next == f.kids.size()) {
      out += ')';
      stack.pop_back();
      continue;
    }
    if (f.next > 0) out += ',';
    VertexId c = f.kids[f.next++];
    enter(c);
  }
  out += ';';
  return out;
}

std::vector<Tree> read_newick_lines(std::istream& in, const std::string& source,
                                    const std::shared_ptr<LeafIndex>& index, NewickOptions options) {
  std::vector<Tree> trees;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;
    try {
      trees.push_back(parse_newick(line, index, options));
    } catch (const NewickError& e) {
      std::string msg = e.what();
      auto cut = msg.rfind(" at column ");
      if (cut != std::string::npos) msg.resize(cut);
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ":" + std::to_string(e.column()) + ": " + msg);
    } catch (const std::exception& e) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return trees;
}

}  // namespace refinery
