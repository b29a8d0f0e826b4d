#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wrtlab/random.hpp"
#include "wrtlab/sequences.hpp"

namespace wrtlab {

// E[X^q] for X ~ Beta(a, b); b = 0 is the point mass at 1.
double beta_moment(double a, double b, unsigned q);
// E[X^p (1-X)^q] for X ~ Beta(a, b).
double beta_mixed_moment(double a, double b, unsigned p, unsigned q);

// p-th moment of the Mittag-Leffler law ML(alpha, theta).
double ml_moment(double alpha, double theta, double p);

enum class ChainForm { kMlmc, kIpggp, kGeneric };

std::string to_string(ChainForm form);

// Limit chain M_k of a fitness sequence with A_n ~ c n.
struct LimitChainSpec {
  FitnessSequence fitness;
  double c;
  ChainForm form;
  double alpha = 0.0;  // kMlmc only
  double theta = 0.0;  // kMlmc only

  // Picks the closed form when the fitness is constant or integer periodic.
  static LimitChainSpec from_fitness(const FitnessSequence& fitness);
  // Forces the partial-product path.
  static LimitChainSpec generic(const FitnessSequence& fitness, double c);
};

struct ChainMoment {
  double value;
  bool flagged;  // generic path only: extrapolation moved the estimate by > 1%
};

// C_p for (a, b, b, ...).
double cp_constant(double a, double b, unsigned p);
// C_p for (a, b_1..b_l, b_1..b_l, ...) with integer b_i.
double cp_periodic(double a, const std::vector<double>& pattern, unsigned p);
// C_p = lim n^{p - p/(c+1)} prod_{i<n} E[beta_i^p], extrapolated from the
// partial products at N/4, N/2 and N.
ChainMoment cp_generic(const FitnessSequence& fitness, double c, unsigned p, std::size_t N);

// E[M_k^p] = (c+1)^p C_p / prod_{i<k} E[beta_i^p].
ChainMoment limit_chain_moment(const LimitChainSpec& spec, std::size_t k, unsigned p,
                               std::size_t N = std::size_t{1} << 20);

struct ChainSample {
  std::vector<double> M;     // M[k-1] = M_k, k = 1..k_max
  std::vector<double> beta;  // beta[k-1] = beta_k, k = 1..k_max-1
  double Z_hat;
  bool truncation_warning;  // N below 10^4
};

// MLMC(alpha, theta) through the fitness (theta/alpha, 1/alpha - 1, ...):
// M_1 = (c+1) C_1 X_N with X_N = prod beta_i / E[beta_i], M_{k+1} = M_k / beta_k.
ChainSample sample_mlmc(double alpha, double theta, std::size_t k_max, std::size_t N, Rng& rng);

// M_k from a sampled coupling with Z estimated by tail averaging. Built from the
// top index down, so M[k-1] == beta_k * M[k] holds exactly.
ChainSample sample_limit_chain(const FitnessSequence& fitness, double c, std::size_t k_max,
                               std::size_t N, Rng& rng);

// G_k = (Z_1 + ... + Z_k)^{1/r}, Z_1 ~ Gamma(z/r), Z_i ~ Exp(1).
std::vector<double> sample_ggp(double z, double r, std::size_t k_max, Rng& rng);

// Index set {1..S+l-1} minus {B_r + r : 1 <= r <= l-1}.
std::vector<unsigned> ipggp_index_set(const std::vector<double>& pattern);

// Intertwined product of GGP(a+q, l+S), q in the index set.
std::vector<double> sample_ipggp(double a, const std::vector<double>& pattern, std::size_t k_max,
                                 Rng& rng);

// Factor taking the IPGGP to the limit chain: M = (S+l) l^{-l/(S+l)} G.
double ipggp_scale(const std::vector<double>& pattern);

}  // namespace wrtlab
