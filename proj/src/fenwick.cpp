#include "wrtlab/fenwick.hpp"

namespace wrtlab {

void FenwickSampler::push_back(double w) {
  const std::size_t i = value_.size();
  const std::size_t low = i & (~i + 1);
  double s = w;
  for (std::size_t j = i - 1; j > i - low; j -= j & (~j + 1)) s += tree_[j];
  tree_.push_back(s);
  value_.push_back(w);
  total_ += w;
  if (top_bit_ == 0) {
    top_bit_ = 1;
  } else if (i >= 2 * top_bit_) {
    top_bit_ *= 2;
  }
}

void FenwickSampler::add(std::size_t i, double delta) {
  value_[i] += delta;
  total_ += delta;
  const std::size_t n = size();
  for (; i <= n; i += i & (~i + 1)) tree_[i] += delta;
}

double FenwickSampler::prefix(std::size_t i) const {
  double s = 0.0;
  for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
  return s;
}

std::size_t FenwickSampler::find(double target) const {
  const std::size_t n = size();
  std::size_t pos = 0;
  for (std::size_t step = top_bit_; step > 0; step >>= 1) {
    const std::size_t next = pos + step;
    if (next <= n && tree_[next] <= target) {
      pos = next;
      target -= tree_[next];
    }
  }
  std::size_t i = pos + 1;
  // Rounding can push the descent past the last positive entry or onto a
  // zero-weight one; move to the nearest positive weight.
  if (i > n) i = n;
  while (i < n && value_[i] <= 0.0) ++i;
  while (i > 1 && value_[i] <= 0.0) --i;
  return i;
}

}  // namespace wrtlab
