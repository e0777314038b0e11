#include <sstream>

#include "doctest.h"
#include "enumerate.hpp"
#include "fixtures.hpp"
#include "refinery/build.hpp"
#include "refinery/oracle.hpp"
#include "refinery/simgen.hpp"

using namespace refinery;
using refinery::testing::tree;
using refinery::testing::trees;

namespace {

std::string triples_text(const TripleSet& s, const LeafIndex& idx) {
  std::ostringstream os;
  write_triples(os, s, idx);
  return os.str();
}

}  // namespace

TEST_CASE("representative triples") {
  Tree t = tree("((a,b),c)");
  CHECK(triples_text(representative_triples(t), t.index()) == "a b | c\n");
  CHECK(representative_triples(t) == all_triples(t));
  CHECK(representative_triples(tree("(a,b,c,d)")).empty());
  CHECK(representative_triples(tree("(a,b)")).empty());

  Tree cat = tree("(((a,b),c),d)");
  CHECK(triples_text(representative_triples(cat), cat.index()) == "a b | c\na c | d\n");
  auto built = build(representative_triples(cat), cat.index_ptr());
  REQUIRE(built.has_value());
  CHECK(to_newick(*built) == to_newick(cat));
}

TEST_CASE("all triples by definition") {
  Tree cat = tree("(((a,b),c),d)");
  CHECK(triples_text(all_triples(cat), cat.index()) == "a b | c\na b | d\na c | d\nb c | d\n");
  CHECK(all_triples(tree("(a,b,c,d)")).empty());
}

TEST_CASE("representative triples are displayed triples") {
  Rng rng(21);
  for (int rep = 0; rep < 40; ++rep) {
    Tree t = random_tree(3 + static_cast<std::size_t>(rep), rng);
    auto r = representative_triples(t);
    CHECK(r.is_subset_of(all_triples(t)));
    if (t.size() == 2 * t.n_leaves() - 1) CHECK(r.size() == t.n_leaves() - 2);
  }
}

TEST_CASE("one triple per sibling subtree") {
  Tree t = tree("((a,b),c,(d,e))");
  CHECK(triples_text(representative_triples(t), t.index()) == "a b | c\na b | d\nd e | a\nd e | c\n");
}

TEST_CASE("build_refine agrees with the oracle on all pairs up to five leaves") {
  for (std::size_t n = 3; n <= 5; ++n) {
    auto idx = refinery::testing::letter_leaves(n);
    auto all = refinery::testing::all_phylogenetic_trees(idx);
    std::size_t disagreements = 0;
    for (const auto& a : all) {
      for (const auto& b : all) {
        std::vector<Tree> pair{a, b};
        disagreements += !refinery::testing::same_outcome(build_refine(pair), refine_oracle(pair));
      }
    }
    CHECK_MESSAGE(disagreements == 0, "n = " << n);
  }
}

TEST_CASE("build on three leaves") {
  auto idx = refinery::testing::letter_leaves(3);
  auto star = build(TripleSet{}, idx);
  REQUIRE(star.has_value());
  CHECK(to_newick(*star) == "(a,b,c);");
  auto cherry = build(TripleSet({Triple::make(0, 1, 2)}), idx);
  REQUIRE(cherry.has_value());
  CHECK(to_newick(*cherry) == "((a,b),c);");
  CHECK_FALSE(build(TripleSet({Triple::make(0, 1, 2), Triple::make(0, 2, 1)}), idx).has_value());
  CHECK(triples_text(TripleSet({Triple::make(1, 0, 2)}), *idx) == "a b | c\n");
}

TEST_CASE("build identifies trees from their triples up to six leaves") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto idx = refinery::testing::letter_leaves(n);
    std::size_t mismatches = 0;
    refinery::testing::for_each_phylogenetic_tree(idx, [&](const Tree& t) {
      auto a = build(representative_triples(t), idx);
      auto b = build(all_triples(t), idx);
      mismatches += !a || to_newick(*a) != to_newick(t);
      mismatches += !b || to_newick(*b) != to_newick(t);
    });
    CHECK_MESSAGE(mismatches == 0, "n = " << n);
  }
}

TEST_CASE("build_refine examples") {
  auto ts = trees({"(a,b,(c,d))", "((a,b),c,d)"});
  auto out = build_refine(ts);
  REQUIRE(out.is_refined());
  CHECK(to_newick(out.tree()) == "((a,b),(c,d));");
  auto bad = trees({"((a,b),c)", "((a,c),b)"});
  auto no = build_refine(bad);
  REQUIRE_FALSE(no.is_refined());
  CHECK(no.reason() == IncompatibleReason::kInconsistentTriples);
  auto binary = trees({"((a,b),(c,d))", "((a,b),(c,d))"});
  CHECK(to_newick(build_refine(binary).tree()) == "((a,b),(c,d));");
  auto fig = trees({"((a,b,c),d,e)", "((a,b),c,d,e)", "(a,b,c,(d,e))"});
  CHECK(refinery::testing::same_outcome(build_refine(fig), refine_oracle(fig)));
}
