#pragma once

#include <cstddef>
#include <vector>

#include "wrtlab/sequences.hpp"
#include "wrtlab/trees.hpp"

namespace wrtlab {

// All (n-1)! traces of recursive trees on n vertices, in lexicographic order.
std::vector<GrowthTrace> enumerate_traces(std::size_t n);

// Probability of a trace under PA(a), step to two vertices forced.
double pat_trace_probability(const FitnessSequence& fitness, const GrowthTrace& trace);

// Probability of a trace under WRT with the random weights of the Beta-product
// coupling, averaged over the betas through their mixed moments.
double wrt_mixture_trace_probability(const FitnessSequence& fitness, const GrowthTrace& trace);

// Probability of a trace under WRT with fixed weights.
double wrt_trace_probability(const WeightSequence& weights, const GrowthTrace& trace);

struct TraceProbability {
  GrowthTrace trace;
  double p_pat;
  double p_wrt_mixture;
};

struct Theorem1Report {
  std::size_t n;
  double max_abs_diff;
  double pat_total;
  double mixture_total;
  bool pass;
  GrowthTrace worst_trace;
  std::vector<TraceProbability> rows;
};

Theorem1Report certify_theorem1(const FitnessSequence& fitness, std::size_t n,
                                double tolerance = 1e-10);

}  // namespace wrtlab
