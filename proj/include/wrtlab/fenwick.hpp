#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wrtlab {

// Growable Fenwick tree over nonnegative weights, used for sampling an index
// with probability proportional to its weight. Indices are 1-based.
class FenwickSampler {
 public:
  FenwickSampler() : tree_(1, 0.0), value_(1, 0.0) {}

  void reserve(std::size_t n) {
    tree_.reserve(n + 1);
    value_.reserve(n + 1);
  }

  std::size_t size() const { return value_.size() - 1; }
  double total() const { return total_; }
  double weight(std::size_t i) const { return value_[i]; }

  void push_back(double w);
  void add(std::size_t i, double delta);
  double prefix(std::size_t i) const;

  // Smallest i with prefix(i) > target. Zero-weight entries are never returned
  // as long as 0 <= target < total().
  std::size_t find(double target) const;

 private:
  std::vector<double> tree_;
  std::vector<double> value_;
  double total_ = 0.0;
  std::size_t top_bit_ = 0;
};

}  // namespace wrtlab
