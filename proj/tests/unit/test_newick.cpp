#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "refinery/simgen.hpp"

using namespace refinery;
using refinery::testing::canon;
using refinery::testing::tree;

TEST_CASE("parse the two-level example") {
  Tree t = tree("(a,(b,c)v1)v2");
  CHECK(t.n_leaves() == 3);
  CHECK(t.size() == 5);
  const auto& idx = t.index();
  std::vector<std::string> got;
  for (const auto& c : clusters(t)) got.push_back(format_cluster(c, idx));
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"{a,b,c}", "{a}", "{b,c}", "{b}", "{c}"});
}

TEST_CASE("single leaf") {
  Tree t = tree("x;");
  CHECK(t.size() == 1);
  CHECK(t.is_leaf(t.root()));
  CHECK(to_newick(t) == "x;");
}

TEST_CASE("canonical output") {
  CHECK(canon("((a,b),c)") == "((a,b),c);");
  CHECK(canon("(c,(b,a))") == "((a,b),c);");
  CHECK(canon("((d,c),(b,a));") == "((a,b),(c,d));");
}

TEST_CASE("dialect: branch lengths, inner labels, comments, quotes") {
  CHECK(canon("((a:1.5,b:2e-3)ab:0.1,c:4);") == "((a,b),c);");
  CHECK(canon("( a , [note] ( b , c ) ) ;") == "(a,(b,c));");
  CHECK(canon("('x y',z)") == "('x y',z);");
  CHECK(canon("('it''s',z)") == "('it''s',z);");
}

TEST_CASE("errors carry a column") {
  auto fails = [](std::string_view text, std::string_view needle) {
    try {
      (void)parse_newick(text);
    } catch (const NewickError& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
      CHECK(e.column() >= 1);
      return;
    }
    FAIL("no error for " << text);
  };
  fails("((a,b),c", "unbalanced '('");
  fails("(a,b))", "unbalanced ')'");
  fails("(a,a)", "duplicate leaf label 'a'");
  fails("(a,,b)", "empty leaf label");
  fails("", "empty tree");
  fails("(a:x,b)", "invalid branch length");
  fails("(a,b);(c,d);", "trailing");
  try {
    (void)parse_newick("(a,(b));", NewickOptions{true, LabelPolicy::kRegister});
    FAIL("unary accepted in strict mode");
  } catch (const NewickError& e) {
    CHECK(std::string(e.what()).find("fewer than two children") != std::string::npos);
  }
  CHECK_NOTHROW(parse_newick("(a,(b));"));
}

TEST_CASE("duplicate label error column points at the second occurrence") {
  try {
    (void)parse_newick("(a,b,a)");
    FAIL("expected error");
  } catch (const NewickError& e) {
    CHECK(e.column() == 6);
  }
}

TEST_CASE("existing-label policy and index isolation on failure") {
  auto idx = std::make_shared<LeafIndex>();
  (void)parse_newick("(a,b,c)", idx);
  CHECK(idx->size() == 3);
  CHECK_THROWS_AS(parse_newick("(a,d)", idx, NewickOptions{false, LabelPolicy::kExisting}), NewickError);
  CHECK_THROWS_AS(parse_newick("(a,d,", idx), NewickError);
  CHECK(idx->size() == 3);
  Tree t = parse_newick("(c,(a,b))", idx, NewickOptions{false, LabelPolicy::kExisting});
  CHECK(t.covers_index());
}

TEST_CASE("line reader reports source and line") {
  auto idx = std::make_shared<LeafIndex>();
  std::istringstream in("(a,b,c);\n\n((a,b),c\n");
  try {
    (void)read_newick_lines(in, "input.nwk", idx);
    FAIL("expected error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).rfind("input.nwk:3:", 0) == 0);
  }
  std::istringstream ok("(a,b,c);\n((a,b),c);\n");
  auto idx2 = std::make_shared<LeafIndex>();
  CHECK(read_newick_lines(ok, "-", idx2).size() == 2);
}

TEST_CASE("round trip on random trees") {
  Rng rng(5);
  for (int rep = 0; rep < 100; ++rep) {
    Tree t = random_tree(1 + rep, rng);
    std::string s = to_newick(t);
    CHECK(to_newick(parse_newick(s)) == s);
  }
}
