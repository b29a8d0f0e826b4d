#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "wrtlab/random.hpp"

namespace wrtlab {

// Fitness sequence a_1, a_2, ... with a_1 > -1 and a_n >= 0 for n >= 2.
// Stored as a finite head followed by a periodic tail, so every term and every
// partial sum A_n is available in O(1) without a length limit.
class FitnessSequence {
 public:
  FitnessSequence(std::vector<double> head, std::vector<double> period);

  double a(std::size_t n) const;
  double A(std::size_t n) const;  // A_0 = 0

  const std::vector<double>& head() const { return head_; }
  const std::vector<double>& period() const { return period_; }

  // Mean of the periodic tail, the constant c of A_n ~ c n.
  double period_mean() const { return period_sum_ / period_.size(); }
  double period_sum() const { return period_sum_; }

  // (a, b, b, b, ...)
  bool is_constant() const { return head_.size() == 1 && period_.size() == 1; }
  // (a, b_1..b_l, b_1..b_l, ...) with integer b_i
  bool is_integer_periodic() const;

  std::vector<double> values(std::size_t n) const;

 private:
  std::vector<double> head_;
  std::vector<double> period_;
  std::vector<double> head_cum_;
  std::vector<double> period_cum_;
  double period_sum_ = 0.0;
};

FitnessSequence make_constant_fitness(double a, double b);
FitnessSequence make_periodic_fitness(double a, const std::vector<double>& pattern);

enum class WeightOrigin { kDeterministic, kBetaSampled };

// Weights w_1..w_n and partial sums W_1..W_n. Both are kept in linear and log
// form; the linear values overflow to inf for fast-growing sequences, the log
// values never do. Index 0 holds W_0 = 0.
class WeightSequence {
 public:
  static WeightSequence from_increments(const std::vector<double>& w);
  static WeightSequence from_log_increments(const std::vector<double>& log_w);
  // W[n-1] = W_n; w_n is recovered as W_n - W_{n-1}.
  static WeightSequence from_cumulative(const std::vector<double>& W);
  // log_W[n-1] = log W_n, log_w[n-1] = log w_n.
  static WeightSequence from_logs(std::vector<double> log_w, std::vector<double> log_W,
                                  WeightOrigin origin = WeightOrigin::kDeterministic,
                                  std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t size() const { return w_.size() - 1; }

  double w(std::size_t n) const { return w_[n]; }
  double W(std::size_t n) const { return W_[n]; }
  double log_w(std::size_t n) const { return log_w_[n]; }
  double log_W(std::size_t n) const { return log_W_[n]; }
  double ratio(std::size_t n) const;  // w_n / W_n

  // True when every W_n is finite, so sampling can use the linear array.
  bool finite() const { return finite_; }

  // Arrays indexed 0..n with entry 0 equal to W_0 = 0.
  const std::vector<double>& cumulative() const { return W_; }
  const std::vector<double>& log_cumulative() const { return log_W_; }

  WeightOrigin origin() const { return origin_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  WeightSequence prefix(std::size_t n) const;

 private:
  WeightSequence() = default;
  void finish();

  std::vector<double> w_, W_, log_w_, log_W_;
  bool finite_ = true;
  WeightOrigin origin_ = WeightOrigin::kDeterministic;
  std::optional<std::uint64_t> seed_;
};

// w_n = C (n^gamma - (n-1)^gamma), W_n = C n^gamma.
WeightSequence make_power_weights(double gamma, double C, std::size_t n_max);
// w_n = ratio^n, evaluated in log space.
WeightSequence make_geometric_weights(double ratio, std::size_t n_max);

// Independent beta_k ~ Beta(A_k + k, a_{k+1}) for k = 1..n_max-1.
class BetaCoupling {
 public:
  static BetaCoupling from_values(const std::vector<double>& betas);

  std::size_t n_max() const { return log_beta_.size() + 1; }
  std::size_t size() const { return log_beta_.size(); }

  // beta(0) = 0 by convention.
  double beta(std::size_t k) const { return k == 0 ? 0.0 : std::exp(log_beta_[k - 1]); }
  double log_beta(std::size_t k) const { return log_beta_[k - 1]; }
  double log1m_beta(std::size_t k) const;  // log(1 - beta_k)
  std::vector<double> betas() const;

  const std::optional<FitnessSequence>& fitness() const { return fitness_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  // Same betas followed by fresh draws up to n_max, continuing the RNG stream
  // the coupling was sampled from. Extending never changes earlier terms.
  BetaCoupling extended(std::size_t n_max) const;

 private:
  friend BetaCoupling sample_beta_coupling(const FitnessSequence&, std::size_t, Rng&);
  friend BetaCoupling sample_beta_coupling(const FitnessSequence&, std::size_t, std::uint64_t);
  BetaCoupling() = default;
  void draw_until(std::size_t n_max, Rng& rng);

  std::vector<double> log_beta_;
  std::optional<FitnessSequence> fitness_;
  std::optional<std::uint64_t> seed_;
  Rng rng_;
};

BetaCoupling sample_beta_coupling(const FitnessSequence& fitness, std::size_t n_max, Rng& rng);
BetaCoupling sample_beta_coupling(const FitnessSequence& fitness, std::size_t n_max,
                                  std::uint64_t seed);

// W_1 = 1, W_n = prod_{k<n} 1/beta_k, w_n = W_n (1 - beta_{n-1}).
WeightSequence weights_from_betas(const BetaCoupling& coupling);

struct SequenceProfile {
  double gamma_hat;
  double C_hat;
  double residual_exponent;  // +inf when residuals are at rounding level
  double c_hat;              // NaN for weight input
  double gamma_predicted;    // c_hat / (c_hat + 1), NaN for weight input
};

// Least squares of log W_n on log n over the upper half of the indices.
SequenceProfile estimate_profile(const WeightSequence& weights);
// c_hat from the tail average of A_n / n over n in [n/2, n].
SequenceProfile estimate_profile(const FitnessSequence& fitness, std::size_t n);

struct LimitWeights {
  double Z_hat;
  std::vector<double> m;  // m[n-1] = (c+1)/Z_hat * w_n, n = 1..N
};

// Average of W_n n^{-c/(c+1)} over n in [window_lo * N, N].
double estimate_Z(const BetaCoupling& coupling, double c, std::size_t N, double window_lo = 0.5);

// m_n = (c+1)/Z_hat * w_n with Z_hat from estimate_Z.
LimitWeights limit_weights(const BetaCoupling& coupling, double c, std::size_t N,
                           double window_lo = 0.5);

}  // namespace wrtlab
