#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "wrtlab/random.hpp"
#include "wrtlab/sequences.hpp"
#include "wrtlab/stat_tests.hpp"

namespace wrtlab {

// Vertex ids: seed vertices 0..k-1, then arrival v_i (i >= 2) at k + i - 2.
struct MultiGraph {
  std::size_t seed_count = 0;
  std::size_t m = 0;
  double alpha = 0.0;
  std::vector<std::uint64_t> degree;
  // Edges created by arrivals, (newcomer, target); seed edges are not listed.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::size_t vertex_count() const { return degree.size(); }
  std::size_t arrivals() const { return degree.size() - seed_count; }
  std::uint64_t merged_seed_degree() const;
};

void validate_pagraph(const std::vector<std::uint32_t>& seed_degrees, std::size_t m, double alpha);

// G_1 is the seed; G_n has n - 1 arrivals, each sending m edges one at a time
// to existing vertices chosen with probability proportional to alpha + degree.
MultiGraph grow_pa_graph(const std::vector<std::uint32_t>& seed_degrees, std::size_t m,
                         double alpha, std::size_t n, Rng& rng);

// Running maximum degree of one graph observed at increasing sizes.
std::vector<std::uint64_t> pa_graph_max_degrees(const std::vector<std::uint32_t>& seed_degrees,
                                                std::size_t m, double alpha,
                                                const std::vector<std::size_t>& checkpoints,
                                                Rng& rng);

// (w(S), 0^{m-1}, m + alpha, 0^{m-1}, m + alpha, ...) with w(S) = Sum d_i + k alpha.
FitnessSequence pagraph_fitness(const std::vector<std::uint32_t>& seed_degrees, std::size_t m,
                                double alpha);

// Graph time n corresponds to PAT size 1 + (n - 1) m.
inline std::size_t pagraph_tree_size(std::size_t n, std::size_t m) { return 1 + (n - 1) * m; }

struct PagraphLimitReport {
  std::size_t n = 0;
  std::size_t replicates = 0;
  double exponent = 0.0;     // 1 / (2 + alpha/m)
  double time_change = 0.0;  // m^{m/(2m + alpha)}: N = time_change * M^a
  std::vector<double> merged_seed;                // n^{-exponent} * Sum_j deg(v_1^{(j)})
  std::vector<std::vector<double>> arrivals;      // arrivals[i][r]: n^{-exponent} deg(v_{i+2})
  std::vector<std::vector<double>> split;         // split[j][r]: seed fraction of v_1^{(j)}
  std::vector<double> max_degree;                 // n^{-exponent} * max degree
  Summary merged_seed_summary{};
  std::vector<Summary> split_summary;
};

PagraphLimitReport coupled_degree_limits(const std::vector<std::uint32_t>& seed_degrees,
                                         std::size_t m, double alpha, std::size_t n,
                                         std::size_t replicates, Rng& rng,
                                         std::size_t arrivals_kept = 3);

struct PagraphCertificate {
  std::size_t n = 0;
  std::size_t tree_size = 0;
  double max_abs_diff = 0.0;        // merged-degree sequence law
  double max_trace_abs_diff = 0.0;  // merged edge-target sequence law
  double graph_total = 0.0;
  double pat_total = 0.0;
  std::size_t outcomes = 0;
  bool pass = false;
};

// Exhaustive comparison of the direct graph model with the merged PAT for
// 1 + (n - 1) m <= 8 (refused otherwise).
PagraphCertificate certify_pagraph_coupling(const std::vector<std::uint32_t>& seed_degrees,
                                            std::size_t m, double alpha, std::size_t n,
                                            double tol = 1e-10);

}  // namespace wrtlab
