#include "wrtlab/random.hpp"

#include <cmath>

namespace wrtlab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(~index));
}

double sample_gamma(double shape, Rng& rng) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

BetaDraw sample_beta(double a, double b, Rng& rng) {
  if (b == 0.0) return {1.0, 0.0, -INFINITY};
  if (b == 1.0) {
    const double lb = std::log1p(-uniform01(rng)) / a;
    return {std::exp(lb), lb, lb == 0.0 ? -INFINITY : std::log(-std::expm1(lb))};
  }
  const double x = sample_gamma(a, rng);
  const double y = sample_gamma(b, rng);
  if (x == 0.0) return {0.0, -INFINITY, 0.0};
  if (y == 0.0) return {1.0, 0.0, -INFINITY};
  const double r = y / x;
  return {1.0 / (1.0 + r), -std::log1p(r), std::log(r) - std::log1p(r)};
}

double sample_log_beta(double a, double b, Rng& rng) {
  if (b == 0.0) return 0.0;
  if (b == 1.0) return std::log1p(-uniform01(rng)) / a;
  const double x = sample_gamma(a, rng);
  const double y = sample_gamma(b, rng);
  if (x == 0.0) return -INFINITY;
  return -std::log1p(y / x);
}

}  // namespace wrtlab
