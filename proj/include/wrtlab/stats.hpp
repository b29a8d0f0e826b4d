#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wrtlab/random.hpp"
#include "wrtlab/sequences.hpp"
#include "wrtlab/stat_tests.hpp"
#include "wrtlab/trees.hpp"

namespace wrtlab {

// L_n(k) for k = 0..height.
std::vector<std::uint64_t> profile(const PlaneTree& tree);

double f_gamma(double gamma, double z);
// Positive root of f_gamma, by bisection to 1e-12.
double solve_z_plus(double gamma);
// log((gamma - 1) / gamma) for gamma > 1, -inf otherwise.
double z_minus(double gamma);
double height_constant(double gamma);  // gamma * exp(z_plus)

struct ProfileAsymptotics {
  double gamma;
  double z_plus;
  double z_minus;
  double phi(double z) const;  // gamma (e^z - 1)
};

ProfileAsymptotics profile_asymptotics(double gamma);

// Leading Gaussian term n / sqrt(2 pi log n) exp(-(k - gamma log n)^2 / (2 gamma log n)).
double gaussian_profile_prediction(std::size_t n, double gamma, double k);

// Sum_k L_n(k) e^{zk}, and its logarithm.
double laplace_profile(const PlaneTree& tree, double z);
double log_laplace_profile(const PlaneTree& tree, double z);
// n^{-(1 + phi(z))} Sum_k L_n(k) e^{zk}.
double normalized_N(const PlaneTree& tree, double gamma, double z);

// Sum_i (w_i / W_n) e^{z ht(u_i)} with n = tree.size().
double weighted_laplace(const PlaneTree& tree, const WeightSequence& weights, double z);
// C_n(z) = prod_{i=2}^n (1 + (e^z - 1) w_i / W_i).
double C_n(const WeightSequence& weights, double z, std::size_t n);
double log_C_n(const WeightSequence& weights, double z, std::size_t n);
double M_n(const PlaneTree& tree, const WeightSequence& weights, double z);

enum class MeasureKind { kWeight, kDegree, kUniform };

const char* to_string(MeasureKind kind);

struct TreeMeasure {
  MeasureKind kind;
  std::vector<double> atoms;  // atoms[k - 1] is the mass of u_k
};

TreeMeasure weight_measure(const PlaneTree& tree, const WeightSequence& weights);
// (b_k + deg(u_k)) / (B_n + n - 1).
TreeMeasure degree_measure(const PlaneTree& tree, const FitnessSequence& b);
TreeMeasure uniform_measure(const PlaneTree& tree);
double subtree_mass(const TreeMeasure& measure, const PlaneTree& tree, std::size_t k);

enum class Regime { kAtomic, kDiffuseBoundary, kSingleLeaf, kUndetermined };

const char* to_string(Regime regime);

// Classification from the prefix of the weights. Each series is cut into
// dyadic blocks [2^j, 2^{j+1}); the last two block-sum ratios decide
// convergence (both below 0.75) or divergence (both at least 0.95).
struct RegimeReport {
  Regime regime;
  double log_sum_w;        // log of Sum w_i over the horizon
  double sum_ratio_sq;     // Sum (w_i / W_i)^2 over the horizon
  double block_ratio_w;    // last block ratio for Sum w_i
  double block_ratio_r2;   // last block ratio for Sum (w_i / W_i)^2
  bool sum_w_converges;
  bool sum_r2_converges;
};

RegimeReport measure_regime(const WeightSequence& weights, std::size_t horizon = 0);

// p_k = (w_k/W_k)^2 prod_{i>k} (1 - (w_i/W_i)^2), truncated at the horizon.
// The truncated product is an upper bound; lower_bound multiplies it by
// 1 - (estimated tail of Sum (w_i/W_i)^2).
struct MrcaProbability {
  double value;
  double lower_bound;
  double tail_estimate;
};

MrcaProbability mrca_law(const WeightSequence& weights, std::size_t k, std::size_t horizon = 0);

// A label drawn from mu_n.
Vertex sample_weight_measure(const WeightSequence& weights, std::size_t n, Rng& rng);

// MRCA of two independent mu_n-samples in a fresh WRT, by following the two
// ancestral lines only: the parent of u_v is drawn with probability w_j/W_{v-1}.
Vertex sample_mrca_pair(const WeightSequence& weights, std::size_t n, Rng& rng);

// f(n) = Sum_{i=2}^{n-1} w_i / W_i.
double expected_height_sum(const WeightSequence& weights, std::size_t n);
// E deg(u_k) in T_n = Sum_{i=k}^{n-1} w_k / W_i.
double degree_expectation(const WeightSequence& weights, std::size_t k, std::size_t n);

// Scaled degrees x_k = n^{-(1-gamma)} deg(u_k) over replicate trees. With
// weights, ratio_k = x_k C (1 - gamma) / w_k, or x_k when w_k = 0.
struct DegreeScalingReport {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double gamma = 0.0;
  std::vector<Summary> scaled;
  std::vector<Summary> scaled_sq;
  std::vector<Summary> ratio;
  Summary lp_norm{};
  double lp = 2.0;
  double max_is_first = 0.0;  // fraction of replicates where deg(u_1) is the maximum
};

class DegreeScalingAccumulator {
 public:
  DegreeScalingAccumulator(double gamma, std::size_t k_max, double lp = 2.0);

  void set_weights(const WeightSequence& weights, double C);
  void add(const PlaneTree& tree);
  void add_degrees(std::span<const std::uint32_t> degrees);
  // Merge replicates gathered elsewhere, in order.
  void merge(const DegreeScalingAccumulator& other);

  const std::vector<double>& samples(std::size_t k) const { return scaled_[k - 1]; }
  DegreeScalingReport report() const;

 private:
  double gamma_;
  std::size_t k_max_;
  double lp_;
  std::size_t n_ = 0;
  std::vector<double> w_;  // w_1..w_kmax
  double C_ = 0.0;
  std::vector<std::vector<double>> scaled_;
  std::vector<double> norms_;
  std::size_t first_is_max_ = 0;
};

DegreeScalingReport degree_scaling_report(std::span<const PlaneTree> trees,
                                          const WeightSequence* weights, double gamma,
                                          double C, std::size_t k_max);

}  // namespace wrtlab
