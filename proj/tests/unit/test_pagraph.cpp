#include <doctest.h>

#include <cmath>

#include "wrtlab/errors.hpp"
#include "wrtlab/limits.hpp"
#include "wrtlab/pagraph.hpp"
#include "wrtlab/trees.hpp"

using namespace wrtlab;

namespace {
const std::vector<std::uint32_t> kEdge{1, 1};
}

TEST_CASE("pagraph_fitness") {
  CHECK(pagraph_fitness(kEdge, 2, 0.0).values(5) == std::vector<double>{2, 0, 2, 0, 2});
  CHECK(pagraph_fitness(kEdge, 1, 0.5).values(4) == std::vector<double>{3, 1.5, 1.5, 1.5});
  CHECK(pagraph_fitness({2}, 3, 1.0).values(7) == std::vector<double>{3, 0, 0, 4, 0, 0, 4});
  CHECK_THROWS_AS(pagraph_fitness({1}, 2, -1.0), ParameterError);
  CHECK_THROWS_AS(pagraph_fitness({}, 2, 0.0), ParameterError);
  CHECK_THROWS_AS(pagraph_fitness({1}, 0, 0.0), ParameterError);
}

TEST_CASE("grow_pa_graph basics") {
  Rng rng = make_rng(1);
  const auto g1 = grow_pa_graph(kEdge, 2, 0.0, 1, rng);
  CHECK(g1.degree == std::vector<std::uint64_t>{1, 1});
  CHECK(g1.edges.empty());

  const auto g = grow_pa_graph({3, 1, 2}, 3, 0.5, 2000, rng);
  std::uint64_t sum = 0;
  for (auto d : g.degree) sum += d;
  CHECK(sum == 6 + 2 * 3 * 1999);
  CHECK(g.edges.size() == 3 * 1999);
  CHECK(g.arrivals() == 1999);
  bool no_self = true, backwards = true;
  for (auto [u, v] : g.edges) {
    no_self = no_self && u != v;
    backwards = backwards && v < u;
  }
  CHECK(no_self);
  CHECK(backwards);

  // m = 2, seed edge, one arrival: first endpoint uniform over the seed.
  int first = 0;
  const int runs = 100000;
  for (int r = 0; r < runs; ++r) first += grow_pa_graph(kEdge, 2, 0.0, 2, rng).edges[0].second == 0;
  CHECK(std::abs(first / double(runs) - 0.5) < 4 * std::sqrt(0.25 / runs));
}

TEST_CASE("certify_pagraph_coupling") {
  for (double alpha : {0.0, 1.0, -0.5, 2.5}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto c = certify_pagraph_coupling(kEdge, 2, alpha, n);
      CHECK(c.pass);
      CHECK(c.max_abs_diff <= 1e-10);
      CHECK(c.max_trace_abs_diff <= 1e-10);
    }
  }
  CHECK(certify_pagraph_coupling({2}, 1, 0.0, 8).pass);
  CHECK(certify_pagraph_coupling({1, 2, 0}, 3, 0.5, 3).pass);
  CHECK(certify_pagraph_coupling({1, 2, 0}, 3, 0.5, 3).outcomes > 1);
  CHECK_THROWS_AS(certify_pagraph_coupling(kEdge, 2, 0.0, 5), ParameterError);
}

TEST_CASE("graph degree of v_2 matches the merged PAT vertex") {
  const std::size_t n = 50, m = 2;
  const double alpha = 1.0;
  const auto f = pagraph_fitness(kEdge, m, alpha);
  Rng rng = make_rng(2);
  std::vector<double> graph(200, 0.0), tree(200, 0.0);
  for (int r = 0; r < 100000; ++r) {
    const auto g = grow_pa_graph(kEdge, m, alpha, n, rng);
    graph[std::min<std::size_t>(g.degree[2] - m, 199)] += 1;
    const auto t = grow_pat(f, pagraph_tree_size(n, m), rng).tree;
    tree[std::min<std::size_t>(t.out_degree(1 + m), 199)] += 1;
  }
  CHECK(chi_square_two_sample(graph, tree).p_value > 0.001);
}

TEST_CASE("coupled_degree_limits") {
  Rng rng = make_rng(3);
  // Dirichlet(d_i + alpha) split of the seed.
  const auto r = coupled_degree_limits({1, 2}, 2, 1.0, 2000, 4000, rng);
  CHECK(r.exponent == doctest::Approx(0.4));
  CHECK(r.time_change == doctest::Approx(std::pow(2.0, 0.4)));
  // Dir(2, 3): mean 2/5, variance 2*3/(25*6) = 0.04.
  const auto& s = r.split_summary[0];
  CHECK(std::abs(s.mean - 0.4) < 4 * s.se);
  CHECK(s.variance == doctest::Approx(0.04).epsilon(0.08));
  CHECK(r.split_summary[1].mean == doctest::Approx(1 - s.mean));

  // m = 2, alpha = 0, seed edge: the merged seed degree scales like
  // m^{m/(2m+alpha)} M_1 with M from the (2, 0, 2, 0, ...) chain.
  const auto q = coupled_degree_limits(kEdge, 2, 0.0, 10000, 1500, rng);
  const auto spec = LimitChainSpec::from_fitness(pagraph_fitness(kEdge, 2, 0.0));
  const double predicted = q.time_change * limit_chain_moment(spec, 1, 1).value;
  CHECK(std::abs(q.merged_seed_summary.mean / predicted - 1.0) < 0.03);
}

TEST_CASE("max degree growth exponent") {
  Rng rng = make_rng(4);
  const std::vector<std::size_t> ns{1000, 10000, 100000};
  for (double alpha : {0.0, 1.0}) {
    std::vector<double> mean(3, 0.0);
    for (int r = 0; r < 20; ++r) {
      const auto mx = pa_graph_max_degrees(kEdge, 2, alpha, ns, rng);
      for (int i = 0; i < 3; ++i) mean[i] += std::log(double(mx[i])) / 20;
    }
    const double slope = (mean[2] - mean[0]) / std::log(100.0);
    CHECK(std::abs(slope - 1.0 / (2.0 + alpha / 2.0)) < 0.06);
  }
}
