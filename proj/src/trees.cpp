#include "wrtlab/trees.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wrtlab/errors.hpp"

namespace wrtlab {

namespace {

void check_vertex(const PlaneTree& tree, std::size_t i) {
  if (i < 1 || i > tree.size()) {
    throw RangeError("vertex " + std::to_string(i) + " outside 1.." + std::to_string(tree.size()));
  }
}

}  // namespace

PlaneTree::PlaneTree(const GrowthTrace& trace) {
  const std::size_t n = trace.choices.size() + 1;
  parent_.assign(n + 1, 0);
  depth_.assign(n + 1, 0);
  offset_.assign(n + 2, 0);
  for (std::size_t i = 2; i <= n; ++i) {
    const Vertex p = trace.choices[i - 2];
    if (p < 1 || p >= i) {
      throw ParameterError("trace entry for u_" + std::to_string(i) + " must lie in 1.." +
                           std::to_string(i - 1));
    }
    parent_[i] = p;
    depth_[i] = depth_[p] + 1;
    ++offset_[p + 1];
  }
  for (std::size_t i = 1; i <= n + 1; ++i) offset_[i] += offset_[i - 1];
  child_.resize(n - 1);
  std::vector<std::uint32_t> fill(offset_.begin(), offset_.end() - 1);
  for (std::size_t i = 2; i <= n; ++i) child_[fill[parent_[i]]++] = static_cast<Vertex>(i);
}

GrowthTrace PlaneTree::trace() const {
  return GrowthTrace{std::vector<Vertex>(parent_.begin() + 2, parent_.end())};
}

WrtGrower::WrtGrower(const WeightSequence& weights, Rng& rng) : weights_(weights), rng_(rng) {
  if (!(weights.w(1) > 0.0)) throw ParameterError("WRT requires w_1 > 0");
}

Vertex draw_wrt_parent(const WeightSequence& weights, std::size_t m, Rng& rng) {
  const double u = uniform01(rng);
  std::size_t k;
  if (weights.finite()) {
    const auto& W = weights.cumulative();
    const double target = u * W[m];
    k = std::upper_bound(W.begin() + 1, W.begin() + m + 1, target) - W.begin();
  } else {
    const auto& L = weights.log_cumulative();
    const double target = std::log(u) + L[m];
    k = std::upper_bound(L.begin() + 1, L.begin() + m + 1, target) - L.begin();
  }
  // u * W_m can round up to W_m; fall back to the last vertex with weight.
  if (k > m) {
    k = m;
    while (k > 1 && weights.w(k) <= 0.0) --k;
  }
  return static_cast<Vertex>(k);
}

Vertex WrtGrower::draw_parent(std::size_t m) { return draw_wrt_parent(weights_, m, rng_); }

void WrtGrower::grow_to(std::size_t n) {
  if (n > weights_.size()) throw RangeError("weights are not defined up to n");
  trace_.choices.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t m = size(); m < n; ++m) trace_.choices.push_back(draw_parent(m));
}

PatGrower::PatGrower(const FitnessSequence& fitness, Rng& rng) : fitness_(fitness), rng_(rng) {
  weights_.push_back(std::max(fitness.a(1), 0.0));
}

void PatGrower::grow_to(std::size_t n) {
  weights_.reserve(n);
  trace_.choices.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t m = size(); m < n; ++m) {
    std::size_t k = 1;
    if (m == 1) {
      weights_.add(1, fitness_.a(1) + 1.0 - weights_.weight(1));
    } else {
      k = weights_.find(uniform01(rng_) * weights_.total());
      weights_.add(k, 1.0);
    }
    trace_.choices.push_back(static_cast<Vertex>(k));
    weights_.push_back(fitness_.a(m + 1));
  }
}

GrownTree grow_wrt(const WeightSequence& weights, std::size_t n, Rng& rng) {
  if (n < 1) throw ParameterError("tree size must be at least 1");
  WrtGrower g(weights, rng);
  g.grow_to(n);
  return {PlaneTree(g.trace()), g.trace()};
}

GrownTree grow_pat(const FitnessSequence& fitness, std::size_t n, Rng& rng) {
  if (n < 1) throw ParameterError("tree size must be at least 1");
  PatGrower g(fitness, rng);
  g.grow_to(n);
  return {PlaneTree(g.trace()), g.trace()};
}

std::vector<std::uint32_t> degrees(const PlaneTree& tree) {
  std::vector<std::uint32_t> out(tree.size());
  for (std::size_t i = 1; i <= tree.size(); ++i) out[i - 1] = tree.out_degree(i);
  return out;
}

std::vector<std::uint32_t> heights(const PlaneTree& tree) {
  std::vector<std::uint32_t> out(tree.size());
  for (std::size_t i = 1; i <= tree.size(); ++i) out[i - 1] = tree.depth(i);
  return out;
}

std::uint32_t height(const PlaneTree& tree) {
  std::uint32_t h = 0;
  for (std::size_t i = 1; i <= tree.size(); ++i) h = std::max(h, tree.depth(i));
  return h;
}

Vertex mrca(const PlaneTree& tree, std::size_t i, std::size_t j) {
  check_vertex(tree, i);
  check_vertex(tree, j);
  // Ancestors carry smaller labels, so lifting the larger label is always safe.
  while (i != j) {
    if (i > j) {
      i = tree.parent(i);
    } else {
      j = tree.parent(j);
    }
  }
  return static_cast<Vertex>(i);
}

double d_exp(const PlaneTree& tree, std::size_t i, std::size_t j) {
  const Vertex v = mrca(tree, i, j);
  if (i == j) return 0.0;
  return std::exp(-static_cast<double>(tree.depth(v)));
}

std::vector<Vertex> subtree_members(const PlaneTree& tree, std::size_t k) {
  check_vertex(tree, k);
  std::vector<char> inside(tree.size() + 1, 0);
  std::vector<Vertex> out;
  inside[k] = 1;
  out.push_back(static_cast<Vertex>(k));
  for (std::size_t i = k + 1; i <= tree.size(); ++i) {
    if (inside[tree.parent(i)]) {
      inside[i] = 1;
      out.push_back(static_cast<Vertex>(i));
    }
  }
  return out;
}

std::vector<std::uint32_t> ulam_harris_word(const PlaneTree& tree, std::size_t i) {
  check_vertex(tree, i);
  std::vector<std::uint32_t> word;
  for (std::size_t v = i; v != 1; v = tree.parent(v)) {
    const auto kids = tree.children(tree.parent(v));
    const auto it = std::lower_bound(kids.begin(), kids.end(), static_cast<Vertex>(v));
    word.push_back(static_cast<std::uint32_t>(it - kids.begin()) + 1);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace wrtlab
