#include "refinery/simgen.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace refinery {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void validate(const InstanceParams& params) {
  if (params.n < 1) throw std::invalid_argument("n must be at least 1");
  if (params.k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

std::uint64_t stream_seed(const InstanceParams& params) {
  std::uint64_t state = params.seed;
  std::uint64_t h = splitmix64(state);
  for (std::uint64_t part : {static_cast<std::uint64_t>(params.n), static_cast<std::uint64_t>(params.k),
                             std::bit_cast<std::uint64_t>(params.p), params.replicate}) {
    state = h ^ part;
    h = splitmix64(state);
  }
  return h;
}

std::shared_ptr<const LeafIndex> numbered_leaves(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back("x" + std::to_string(i));
  return std::make_shared<const LeafIndex>(labels);
}

Tree random_tree(std::size_t n, Rng& rng) { return random_tree(numbered_leaves(n), rng); }

Tree random_tree(std::shared_ptr<const LeafIndex> index, Rng& rng) {
  const std::size_t n = index->size();
  if (n < 1) throw std::invalid_argument("random tree needs at least one leaf");
  std::vector<Vertex> vs(1);
  vs.reserve(2 * n);
  std::size_t leaves = 1;
  auto attach = [&](std::size_t parent) {
    Vertex c;
    c.parent = static_cast<VertexId>(parent);
    vs[parent].children.push_back(static_cast<VertexId>(vs.size()));
    vs.push_back(std::move(c));
  };
  while (leaves < n) {
    auto v = static_cast<std::size_t>(uniform_below(rng, vs.size()));
    if (vs[v].children.empty()) {
      attach(v);
      attach(v);
    } else {
      attach(v);
    }
    ++leaves;
  }
  LeafId next = 0;
  for (auto& v : vs)
    if (v.children.empty()) v.leaf = next++;
  return Tree(std::move(index), std::move(vs), 0);
}

Tree contract_random(const Tree& t, double p, Rng& rng) {
  std::vector<char> removed(t.size(), 0);
  for (VertexId v : t.preorder()) {
    if (v == t.root() || t.is_leaf(v)) continue;
    removed[static_cast<std::size_t>(v)] = uniform01(rng) < p;
  }
  return contract_vertices(t, [&](VertexId v) { return !removed[static_cast<std::size_t>(v)]; });
}

Instance make_instance(const InstanceParams& params) {
  validate(params);
  const auto seed = stream_seed(params);
  Rng rng(seed);
  Tree seed_tree = random_tree(params.n, rng);
  std::vector<Tree> inputs;
  inputs.reserve(params.k);
  for (std::size_t i = 0; i < params.k; ++i) inputs.push_back(contract_random(seed_tree, params.p, rng));
  return Instance{params, seed, std::move(seed_tree), std::move(inputs)};
}

Instance make_independent_instance(const InstanceParams& params) {
  validate(params);
  auto mixed = params;
  mixed.seed ^= 0x5bd1e9955bd1e995ULL;
  const auto seed = stream_seed(mixed);
  Rng rng(seed);
  auto index = numbered_leaves(params.n);
  std::vector<Tree> inputs;
  inputs.reserve(params.k);
  for (std::size_t i = 0; i < params.k; ++i) {
    Tree t = random_tree(index, rng);
    std::vector<LeafId> perm(params.n);
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = static_cast<LeafId>(j);
    for (std::size_t j = perm.size(); j > 1; --j) std::swap(perm[j - 1], perm[uniform_below(rng, j)]);
    auto vs = t.to_vertices();
    for (auto& v : vs)
      if (v.leaf != kNoLeaf) v.leaf = perm[static_cast<std::size_t>(v.leaf)];
    inputs.emplace_back(index, std::move(vs), t.root());
  }
  Tree first = inputs.front();
  return Instance{params, seed, std::move(first), std::move(inputs)};
}

}  // namespace refinery
