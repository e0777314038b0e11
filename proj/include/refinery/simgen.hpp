#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "refinery/tree.hpp"

namespace refinery {

// Instances are reproducible across platforms: streams come from SplitMix64
// seed derivation feeding std::mt19937_64, and all draws below avoid the
// implementation-defined standard distributions.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t& state);
// Uniform in [0, bound) by rejection.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
// Uniform in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

struct InstanceParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

// Throws std::invalid_argument unless n >= 1, k >= 1, 0 <= p <= 1.
void validate(const InstanceParams& params);

// Per-instance stream seed mixed from the master seed and (n, k, p, replicate).
std::uint64_t stream_seed(const InstanceParams& params);

// Labels "x1".."xn".
std::shared_ptr<const LeafIndex> numbered_leaves(std::size_t n);

// Grows a phylogenetic tree from a single vertex: each step picks a vertex
// uniformly among all current vertices and gives it two children if it is a
// leaf, one otherwise. Leaves are labeled in creation order.
Tree random_tree(std::size_t n, Rng& rng);
Tree random_tree(std::shared_ptr<const LeafIndex> index, Rng& rng);

// Contracts each inner edge independently with probability p, deciding in
// preorder.
Tree contract_random(const Tree& t, double p, Rng& rng);

struct Instance {
  InstanceParams params;
  std::uint64_t stream_seed = 0;
  Tree seed_tree;
  std::vector<Tree> inputs;
};

// Seed tree plus k random contractions of it; always compatible.
Instance make_instance(const InstanceParams& params);

// k independent random trees with shuffled labels; p is unused. Mostly
// incompatible for n >= 4. Used for differential testing.
Instance make_independent_instance(const InstanceParams& params);

}  // namespace refinery
