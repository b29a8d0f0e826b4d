#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wrtlab/random.hpp"
#include "wrtlab/sequences.hpp"
#include "wrtlab/trees.hpp"

namespace wrtlab {

// One row per recorded time: red mass, total mass.
struct UrnTrajectory {
  std::vector<std::size_t> times;
  std::vector<double> red;
  std::vector<double> total;

  std::size_t size() const { return times.size(); }
  double proportion(std::size_t i) const { return red[i] / total[i]; }
};

// Reinforcement at step n (n = start_k + 1, ..., start_k + N).
using UrnStepWeights = std::function<double(std::size_t)>;

// Two-colour urn started at time start_k from (a red, b black). At step n a
// colour is drawn with probability proportional to its mass and s_n is added
// to it. The trajectory has N + 1 rows, the first being the initial state.
UrnTrajectory run_time_dependent_urn(double a, double b, std::size_t start_k,
                                     const UrnStepWeights& s, std::size_t N, Rng& rng);
UrnTrajectory run_time_dependent_urn(double a, double b, std::size_t start_k, double s,
                                     std::size_t N, Rng& rng);

enum class UrnMode { kExchangeable, kDeFinetti };

const char* to_string(UrnMode mode);
UrnMode parse_urn_mode(const std::string& name);

// PAT grown by the downward pass. Urn k holds (W_k, W_{k+1}) and starts at
// (A_k + k, A_{k+1} + k); it is opened when u_{k+1} arrives. In de Finetti
// mode urn k is replaced by coins of bias beta_k ~ Beta(A_k + k, a_{k+1}).
// Each step walks down from u_m, so the cost is quadratic in n on average.
GrownTree grow_pat_via_urns(const FitnessSequence& fitness, std::size_t n, Rng& rng,
                            UrnMode mode);

// Urn with immigration: a_1 red balls at time 1, one ball of the drawn colour
// and a_n white balls added at each time n >= 2. Rows are times 1..n. The draw
// at time 2 is forced and consumes no randomness; time 1 records (a_1, a_1)
// even when a_1 <= 0.
UrnTrajectory run_immigration_urn(const FitnessSequence& fitness, std::size_t n, Rng& rng);

// Red counts of the same urn at the given increasing times only.
std::vector<double> immigration_red_at(const FitnessSequence& fitness,
                                       const std::vector<std::size_t>& times, Rng& rng);

// PAT where "parent is u_1" is decided by coin_rng exactly as the immigration
// urn decides red, and the remaining choice uses rest_rng. With the same coin
// seed, a_1 + deg(u_1) matches run_immigration_urn step for step.
GrownTree grow_pat_root_split(const FitnessSequence& fitness, std::size_t n, Rng& coin_rng,
                              Rng& rest_rng);

// n^{1/(2(c+1))} (D_far - D_n) / sqrt(D_n) with D_t = t^{-1/(c+1)} R_t and
// far = n * horizon_mult. D_far stands in for the limit, which biases the
// variance down by roughly horizon_mult^{-1/(c+1)}.
std::vector<double> immigration_fluctuation_samples(const FitnessSequence& fitness, double c,
                                                    std::size_t n, std::size_t horizon_mult,
                                                    std::size_t replicates, Rng& rng);

}  // namespace wrtlab
