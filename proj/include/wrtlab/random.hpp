#pragma once

#include <cstdint>
#include <random>

namespace wrtlab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Seed of the stream for replicate `index` under `master`. Depends only on the
// pair, so replicates can run in any order or on any thread.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_gamma(double shape, Rng& rng);

struct BetaDraw {
  double value;
  double log_value;    // log(value)
  double log1m_value;  // log(1 - value)
};

// Beta(a, b) as X/(X+Y) with X ~ Gamma(a), Y ~ Gamma(b); b == 1 uses the
// inverse CDF U^{1/a}; b == 0 gives the point mass at 1. Both logs are
// computed without forming 1 - value, which keeps values near 1 accurate.
BetaDraw sample_beta(double a, double b, Rng& rng);

// log of a Beta(a, b) draw; same construction as sample_beta, fewer
// transcendental calls.
double sample_log_beta(double a, double b, Rng& rng);

}  // namespace wrtlab
