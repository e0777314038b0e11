#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "enumerate.hpp"
#include "fixtures.hpp"
#include "refinery/simgen.hpp"

using namespace refinery;
using refinery::testing::tree;

TEST_CASE("leaf index is a dense bijection") {
  LeafIndex idx;
  CHECK(idx.add("a") == 0);
  CHECK(idx.add("b") == 1);
  CHECK(idx.id_of("b") == 1);
  CHECK(idx.label(0) == "a");
  CHECK_FALSE(idx.find("c").has_value());
  CHECK_THROWS_AS(idx.add("a"), std::invalid_argument);
  CHECK_THROWS_AS(idx.add(""), std::invalid_argument);
}

TEST_CASE("tree constructor rejects malformed structures") {
  auto idx = std::make_shared<const LeafIndex>(std::vector<std::string>{"a", "b"});
  std::vector<Vertex> vs(3);
  vs[0].children = {1, 2};
  vs[1].parent = 0;
  vs[1].leaf = 0;
  vs[2].parent = 0;
  vs[2].leaf = 1;
  CHECK_NOTHROW(Tree(idx, vs, 0));

  auto two_roots = vs;
  two_roots[2].parent = kNoVertex;
  two_roots[0].children = {1};
  CHECK_THROWS_AS(Tree(idx, two_roots, 0), std::invalid_argument);

  auto mismatch = vs;
  mismatch[0].children = {1, 1};
  CHECK_THROWS_AS(Tree(idx, mismatch, 0), std::invalid_argument);

  auto dup = vs;
  dup[2].leaf = 0;
  CHECK_THROWS_AS(Tree(idx, dup, 0), std::invalid_argument);

  auto labeled_inner = vs;
  labeled_inner[0].leaf = 1;
  labeled_inner[2].leaf = kNoLeaf;
  CHECK_THROWS_AS(Tree(idx, labeled_inner, 0), std::invalid_argument);
}

TEST_CASE("preorder visits parents first and postorder reverses it") {
  Tree t = tree("((a,b),(c,(d,e)))");
  auto pre = t.preorder();
  REQUIRE(pre.size() == t.size());
  CHECK(pre.front() == t.root());
  std::vector<std::size_t> pos(t.size());
  for (std::size_t i = 0; i < pre.size(); ++i) pos[static_cast<std::size_t>(pre[i])] = i;
  for (VertexId v = 0; static_cast<std::size_t>(v) < t.size(); ++v)
    if (t.parent(v) != kNoVertex) CHECK(pos[static_cast<std::size_t>(t.parent(v))] < pos[static_cast<std::size_t>(v)]);
  auto post = t.postorder();
  std::reverse(post.begin(), post.end());
  CHECK(post == pre);
}

TEST_CASE("leaf counts") {
  SUBCASE("(a,(b,c))") {
    Tree t = tree("(a,(b,c))");
    auto l = leaf_counts(t);
    CHECK(l[static_cast<std::size_t>(t.root())] == 3);
    for (VertexId v = 0; static_cast<std::size_t>(v) < t.size(); ++v) {
      if (t.is_leaf(v)) CHECK(l[static_cast<std::size_t>(v)] == 1);
      else if (v != t.root()) CHECK(l[static_cast<std::size_t>(v)] == 2);
    }
  }
  SUBCASE("root of five leaves") {
    Tree t = tree("((a,b),c,(d,e))");
    CHECK(leaf_counts(t)[static_cast<std::size_t>(t.root())] == 5);
  }
  SUBCASE("random trees: sums over children") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
      Tree t = random_tree(50, rng);
      auto l = leaf_counts(t);
      CHECK(l[static_cast<std::size_t>(t.root())] == 50);
      for (VertexId v = 0; static_cast<std::size_t>(v) < t.size(); ++v) {
        if (t.is_leaf(v)) continue;
        std::int32_t s = 0;
        for (VertexId c : t.children(v)) s += l[static_cast<std::size_t>(c)];
        CHECK(s == l[static_cast<std::size_t>(v)]);
      }
    }
  }
}

TEST_CASE("is_phylogenetic") {
  CHECK(is_phylogenetic(tree("((a,b),c)")));
  CHECK_FALSE(is_phylogenetic(tree("((a,b))")));
  CHECK_FALSE(is_phylogenetic(tree("(a)")));
  CHECK(is_phylogenetic(tree("x;")));
  Rng rng(11);
  for (std::size_t n = 1; n < 60; ++n) CHECK(is_phylogenetic(random_tree(n, rng)));
}

TEST_CASE("contract_vertices") {
  SUBCASE("remove v1") {
    Tree t = tree("(a,(b,c)v1)");
    VertexId v1 = t.parent(t.leaf_vertex(t.index().id_of("b")));
    Tree r = contract_vertices(t, [&](VertexId v) { return v != v1; });
    CHECK(to_newick(r) == "(a,b,c);");
  }
  SUBCASE("keep everything") {
    Tree t = tree("((a,b),(c,(d,e)),f)");
    std::vector<VertexId> map;
    Tree r = contract_vertices(t, [](VertexId) { return true; }, &map);
    CHECK(to_newick(r) == to_newick(t));
    for (std::size_t v = 0; v < t.size(); ++v) CHECK(map[v] != kNoVertex);
  }
  SUBCASE("child order is preserved at the removed vertex's position") {
    Tree t = tree("(a,(b,c),d)");
    VertexId inner = t.children(t.root())[1];
    Tree r = contract_vertices(t, [&](VertexId v) { return v != inner; });
    std::vector<std::string> order;
    for (VertexId c : r.children(r.root())) order.push_back(r.index().label(r.leaf_id(c)));
    CHECK(order == std::vector<std::string>{"a", "b", "c", "d"});
  }
  SUBCASE("cannot remove root or a leaf") {
    Tree t = tree("((a,b),c)");
    CHECK_THROWS_AS(contract_vertices(t, [&](VertexId v) { return v != t.root(); }), std::invalid_argument);
    VertexId leaf = t.leaf_vertex(0);
    CHECK_THROWS_AS(contract_vertices(t, [&](VertexId v) { return v != leaf; }), std::invalid_argument);
  }
  SUBCASE("clusters of the result are the clusters minus removed ones") {
    Rng rng(3);
    for (int rep = 0; rep < 30; ++rep) {
      Tree t = random_tree(40, rng);
      std::vector<char> keep(t.size(), 1);
      for (VertexId v = 0; static_cast<std::size_t>(v) < t.size(); ++v)
        if (v != t.root() && !t.is_leaf(v)) keep[static_cast<std::size_t>(v)] = uniform01(rng) < 0.5;
      Tree r = contract_vertices(t, [&](VertexId v) { return keep[static_cast<std::size_t>(v)] != 0; });
      auto before = vertex_clusters(t);
      std::vector<Cluster> expected;
      for (std::size_t v = 0; v < t.size(); ++v)
        if (keep[v]) expected.push_back(before[v]);
      CHECK(clusters(r) == ClusterSet(expected));
      CHECK(r.n_leaves() == t.n_leaves());
    }
  }
}

TEST_CASE("exhaustive enumeration counts") {
  const std::size_t expected[] = {1, 1, 4, 26, 236, 2752};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t count = 0;
    std::vector<std::string> seen;
    refinery::testing::for_each_phylogenetic_tree(refinery::testing::letter_leaves(n), [&](const Tree& t) {
      CHECK(is_phylogenetic(t));
      seen.push_back(to_newick(t));
      ++count;
    });
    CHECK(count == expected[n - 1]);
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }
}
