#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wrtlab/fenwick.hpp"
#include "wrtlab/random.hpp"
#include "wrtlab/sequences.hpp"

namespace wrtlab {

// Vertices are labelled by arrival index 1..n.
using Vertex = std::uint32_t;

// Parent choices (K_2, ..., K_n): choices[i] is the parent of u_{i+2}.
struct GrowthTrace {
  std::vector<Vertex> choices;

  std::size_t size() const { return choices.size() + 1; }
  bool operator==(const GrowthTrace&) const = default;
};

// Rooted plane tree in arrival order. Children of a vertex are listed by
// arrival, so a newcomer is always the right-most child of its parent.
class PlaneTree {
 public:
  PlaneTree() : PlaneTree(GrowthTrace{}) {}
  explicit PlaneTree(const GrowthTrace& trace);

  std::size_t size() const { return parent_.size() - 1; }
  Vertex parent(std::size_t i) const { return parent_[i]; }  // 0 for the root
  std::uint32_t depth(std::size_t i) const { return depth_[i]; }
  std::span<const Vertex> children(std::size_t i) const {
    return {child_.data() + offset_[i], child_.data() + offset_[i + 1]};
  }
  std::uint32_t out_degree(std::size_t i) const { return offset_[i + 1] - offset_[i]; }

  GrowthTrace trace() const;

 private:
  std::vector<Vertex> parent_;  // index 0 unused
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> offset_;
  std::vector<Vertex> child_;
};

struct GrownTree {
  PlaneTree tree;
  GrowthTrace trace;
};

// Label k in 1..m with probability w_k / W_m.
Vertex draw_wrt_parent(const WeightSequence& weights, std::size_t m, Rng& rng);

// Incremental WRT growth: parent of u_{m+1} drawn with probability w_k / W_m by
// binary search over the cumulative weights (log weights when W overflows).
// grow_to(n) followed by grow_to(n') consumes the RNG exactly like grow_to(n').
class WrtGrower {
 public:
  WrtGrower(const WeightSequence& weights, Rng& rng);

  void grow_to(std::size_t n);
  std::size_t size() const { return trace_.choices.size() + 1; }
  const GrowthTrace& trace() const { return trace_; }

 private:
  Vertex draw_parent(std::size_t m);

  const WeightSequence& weights_;
  Rng& rng_;
  GrowthTrace trace_;
};

// Incremental PAT growth with sampling weights a_k + deg(u_k) held in a
// Fenwick tree. The step to two vertices is forced; a root weight a_1 <= 0 is
// floored at 0 until u_1 has its first child.
class PatGrower {
 public:
  PatGrower(const FitnessSequence& fitness, Rng& rng);

  void grow_to(std::size_t n);
  std::size_t size() const { return weights_.size(); }
  const GrowthTrace& trace() const { return trace_; }
  const FenwickSampler& sampler() const { return weights_; }

 private:
  const FitnessSequence& fitness_;
  Rng& rng_;
  FenwickSampler weights_;
  GrowthTrace trace_;
};

GrownTree grow_wrt(const WeightSequence& weights, std::size_t n, Rng& rng);
GrownTree grow_pat(const FitnessSequence& fitness, std::size_t n, Rng& rng);

// Arrays below are 0-based: element i-1 belongs to u_i.
std::vector<std::uint32_t> degrees(const PlaneTree& tree);
std::vector<std::uint32_t> heights(const PlaneTree& tree);
std::uint32_t height(const PlaneTree& tree);

Vertex mrca(const PlaneTree& tree, std::size_t i, std::size_t j);
double d_exp(const PlaneTree& tree, std::size_t i, std::size_t j);

// Labels of T(u_k) in increasing order, u_k included.
std::vector<Vertex> subtree_members(const PlaneTree& tree, std::size_t k);

// Child ranks (1-based) along the path from the root to u_i.
std::vector<std::uint32_t> ulam_harris_word(const PlaneTree& tree, std::size_t i);

}  // namespace wrtlab
