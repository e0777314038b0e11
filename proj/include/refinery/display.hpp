#pragma once

#include <vector>

#include "refinery/tree.hpp"

namespace refinery {

// Vertex correspondence between a tree A and a tree B. Entries are kNoVertex
// when not set; set entries in both directions are mutually inverse.
struct Correspondence {
  std::vector<VertexId> a_to_b;
  std::vector<VertexId> b_to_a;

  Correspondence() = default;
  Correspondence(std::size_t size_a, std::size_t size_b)
      : a_to_b(size_a, kNoVertex), b_to_a(size_b, kNoVertex) {}

  void link(VertexId a, VertexId b) {
    a_to_b[static_cast<std::size_t>(a)] = b;
    b_to_a[static_cast<std::size_t>(b)] = a;
  }
  bool is_consistent() const;
};

// Decides whether t displays target. corr.a_to_b maps target vertices to t
// vertices. A copy of t is contracted to the image of target, then the
// children of every target vertex are compared with the children of its image
// (through parent edges, which suffices for an injective correspondence).
// Returns false as soon as a required entry is unset.
bool check_display(const Tree& t, const Tree& target, const Correspondence& corr);

// Buffers reused across check_display calls on trees of similar size.
struct DisplayScratch {
  std::vector<VertexId> image_of;
  std::vector<VertexId> contracted_parent;
};
bool check_display(const Tree& t, const Tree& target, const Correspondence& corr, DisplayScratch& scratch);

// Matches target vertices to t vertices with the same cluster (A = target,
// B = t). Unmatched vertices stay unset. Quadratic-ish; intended for
// verification paths and tests.
Correspondence cluster_correspondence(const Tree& target, const Tree& t);

// check_display with a cluster-derived correspondence.
bool displays(const Tree& t, const Tree& target);

}  // namespace refinery
