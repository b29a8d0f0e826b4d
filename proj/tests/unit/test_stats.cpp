#include <doctest.h>

#include <cmath>
#include <numeric>

#include "wrtlab/errors.hpp"
#include "wrtlab/stats.hpp"

using namespace wrtlab;

namespace {

PlaneTree tree_of(std::vector<Vertex> c) { return PlaneTree(GrowthTrace{std::move(c)}); }

WeightSequence ones(std::size_t n) { return make_power_weights(1.0, 1.0, n); }

WeightSequence factorial_weights(std::size_t n) {
  // W_n = n!, so w_1 = 1 and w_n = n! - (n-1)! = (n-1)(n-1)!.
  std::vector<double> log_w{0.0};
  for (std::size_t k = 2; k <= n; ++k) log_w.push_back(std::log(double(k - 1)) + std::lgamma(double(k)));
  return WeightSequence::from_log_increments(log_w);
}

}  // namespace

TEST_CASE("profile") {
  CHECK(profile(tree_of({1, 1, 1})) == std::vector<std::uint64_t>{1, 3});
  CHECK(profile(tree_of({1, 2})) == std::vector<std::uint64_t>{1, 1, 1});
  Rng rng = make_rng(1);
  const auto t = grow_wrt(ones(5000), 5000, rng).tree;
  const auto L = profile(t);
  CHECK(std::accumulate(L.begin(), L.end(), std::uint64_t{0}) == 5000);
  CHECK(L[0] == 1);
  CHECK(L.size() == height(t) + 1);
  CHECK(L.back() >= 1);
}

TEST_CASE("f_gamma and z_plus") {
  for (double g : {0.1, 0.5, 1.0, 2.0, 7.0}) CHECK(f_gamma(g, 0.0) == 1.0);
  CHECK(std::abs(solve_z_plus(1.0) - 1.0) < 1e-11);
  CHECK(std::abs(height_constant(1.0) - M_E) < 1e-10);
  // Independent check: e^z (1 - z) = -1 at z_plus for gamma = 1/2.
  const double z = solve_z_plus(0.5);
  CHECK(std::abs(std::exp(z) * (1 - z) + 1.0) < 1e-10);
  CHECK(z == doctest::Approx(1.27846).epsilon(1e-5));
  CHECK(height_constant(0.5) == doctest::Approx(1.79556).epsilon(1e-5));
  CHECK(z_minus(2.0) == doctest::Approx(std::log(0.5)));
  CHECK(std::isinf(z_minus(1.0)));
  CHECK(z_minus(0.3) < 0);
  const auto pa = profile_asymptotics(2.0);
  CHECK(pa.phi(0.0) == 0.0);
  CHECK(pa.phi(1.0) == doctest::Approx(2.0 * (M_E - 1.0)));
  CHECK(std::abs(f_gamma(2.0, pa.z_plus)) < 1e-10);
  CHECK_THROWS_AS(solve_z_plus(0.0), ParameterError);
}

TEST_CASE("gaussian_profile_prediction") {
  const double L = std::log(1e6);
  CHECK(gaussian_profile_prediction(1000000, 1.0, L) == doctest::Approx(1e6 / std::sqrt(2 * M_PI * L)));
  CHECK(gaussian_profile_prediction(1000000, 1.0, 14) == doctest::Approx(1.073e5).epsilon(1e-3));
  CHECK(gaussian_profile_prediction(1000000, 1.0, L + 11 * std::sqrt(L)) < 1e6 * 1e-20);
  CHECK_THROWS_AS(gaussian_profile_prediction(2, 1.0, 0), ParameterError);
}

TEST_CASE("Laplace transforms of the profile") {
  const auto star = tree_of({1, 1, 1});
  CHECK(laplace_profile(star, std::log(2.0)) == doctest::Approx(7.0));
  CHECK(laplace_profile(tree_of({1, 2}), 1.0) == doctest::Approx(1 + M_E + M_E * M_E));
  Rng rng = make_rng(2);
  const auto t = grow_wrt(ones(3000), 3000, rng).tree;
  CHECK(normalized_N(t, 1.0, 0.0) == 1.0);
  CHECK(normalized_N(star, 0.5, 0.0) == 1.0);
  // Deep paths stay finite in log space.
  std::vector<Vertex> path;
  for (Vertex i = 1; i < 2000; ++i) path.push_back(i);
  CHECK(std::isfinite(log_laplace_profile(tree_of(path), 1.0)));
  CHECK(log_laplace_profile(tree_of(path), 1.0) == doctest::Approx(1999.0 + std::log(1.0 / (1.0 - std::exp(-1.0)))).epsilon(1e-9));
}

TEST_CASE("weighted Laplace transform and C_n") {
  const auto w = ones(10);
  const auto path = tree_of({1, 2});
  CHECK(weighted_laplace(path, w, 0.0) == doctest::Approx(1.0));
  CHECK(C_n(w, 0.0, 10) == 1.0);
  CHECK(M_n(path, w, 0.0) == doctest::Approx(1.0));
  CHECK(C_n(w, std::log(2.0), 3) == doctest::Approx(2.0));
  CHECK(weighted_laplace(path, w, std::log(2.0)) == doctest::Approx((1 + 2 + 4) / 3.0));
  CHECK_THROWS_AS(weighted_laplace(tree_of({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}), w, 0.0), RangeError);
  const auto g = make_geometric_weights(3.0, 3000);
  CHECK(std::isfinite(log_C_n(g, 2.0, 3000)));
}

TEST_CASE("M_n(z) has constant mean") {
  const auto w = ones(100);
  Rng rng = make_rng(3);
  std::vector<double> m10, m100;
  for (int r = 0; r < 100000; ++r) {
    m10.push_back(M_n(grow_wrt(w, 10, rng).tree, w, 0.5));
    m100.push_back(M_n(grow_wrt(w, 100, rng).tree, w, 0.5));
  }
  const auto a = summarize(m10), b = summarize(m100);
  CHECK(std::abs(a.mean - 1.0) < 4 * a.se);
  CHECK(std::abs(b.mean - 1.0) < 4 * b.se);
  CHECK(std::abs(a.mean - b.mean) < 4 * std::hypot(a.se, b.se));
}

TEST_CASE("tree measures") {
  const auto mu = weight_measure(tree_of({1, 1, 1}), ones(4));
  for (double x : mu.atoms) CHECK(x == doctest::Approx(0.25));
  const auto path = tree_of({1, 2});
  const auto eta = degree_measure(path, make_constant_fitness(1.0, 1.0));
  CHECK(eta.atoms[0] == doctest::Approx(0.4));
  CHECK(eta.atoms[1] == doctest::Approx(0.4));
  CHECK(eta.atoms[2] == doctest::Approx(0.2));
  CHECK(subtree_mass(uniform_measure(path), path, 1) == doctest::Approx(1.0));
  CHECK(subtree_mass(eta, path, 2) == doctest::Approx(0.6));
  CHECK_THROWS_AS(degree_measure(PlaneTree(), make_constant_fitness(1, 1)), ParameterError);

  Rng rng = make_rng(4);
  const auto w = make_power_weights(0.7, 1.0, 2000);
  const auto t = grow_wrt(w, 2000, rng).tree;
  for (const auto& m : {weight_measure(t, w), degree_measure(t, make_constant_fitness(0.5, 2.0)),
                        uniform_measure(t)}) {
    double s = 0.0;
    bool nonneg = true;
    for (double x : m.atoms) {
      s += x;
      nonneg = nonneg && x >= 0.0;
    }
    CHECK(std::abs(s - 1.0) < 1e-12);
    CHECK(nonneg);
    CHECK(subtree_mass(m, t, 1) == doctest::Approx(1.0));
  }
}

TEST_CASE("measure_regime") {
  CHECK(measure_regime(make_geometric_weights(0.5, 1000)).regime == Regime::kAtomic);
  CHECK(measure_regime(ones(100000)).regime == Regime::kDiffuseBoundary);
  CHECK(measure_regime(factorial_weights(1000)).regime == Regime::kSingleLeaf);
  CHECK(measure_regime(make_geometric_weights(2.0, 1000)).regime == Regime::kSingleLeaf);
  // w_n = n^{-1.1}: Sum w converges too slowly to tell from 10^5 terms.
  std::vector<double> slow;
  for (int n = 1; n <= 100000; ++n) slow.push_back(std::pow(double(n), -1.1));
  CHECK(measure_regime(WeightSequence::from_increments(slow)).regime == Regime::kUndetermined);
  // gamma = 2: w_i / W_i ~ 2/i.
  CHECK(measure_regime(make_power_weights(2.0, 1.0, 100000)).regime == Regime::kDiffuseBoundary);
  // W_n = exp(2 sqrt n): w_i / W_i ~ 1/sqrt(i), Sum of squares diverges like log.
  std::vector<double> sq;
  for (int n = 1; n <= 100000; ++n) sq.push_back(std::exp(2.0 * std::sqrt(double(n))));
  const auto r = measure_regime(WeightSequence::from_cumulative(sq));
  CHECK(r.regime == Regime::kSingleLeaf);
  CHECK_THROWS_AS(measure_regime(ones(50)), InsufficientDataError);
}

TEST_CASE("mrca_law") {
  const auto w = ones(100000);
  const auto p1 = mrca_law(w, 1);
  CHECK(p1.value == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(p1.lower_bound <= 0.5);
  CHECK(p1.value >= 0.5);
  CHECK(mrca_law(w, 2).value == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
  double total = 0.0;
  for (std::size_t k = 1; k <= 2000; ++k) total += mrca_law(w, k, 4000).value;
  CHECK(total > 0.99);
  CHECK_THROWS_AS(mrca_law(make_geometric_weights(0.5, 1000), 1), DomainError);
}

TEST_CASE("sampled MRCA pairs follow p_k") {
  const auto w = ones(10000);
  Rng rng = make_rng(5);
  const int pairs = 100000;
  int at1 = 0, at2 = 0;
  for (int r = 0; r < pairs; ++r) {
    const Vertex m = sample_mrca_pair(w, 10000, rng);
    at1 += m == 1;
    at2 += m == 2;
  }
  CHECK(std::abs(at1 / double(pairs) - 0.5) < 3 * std::sqrt(0.25 / pairs));
  CHECK(std::abs(at2 / double(pairs) - 1.0 / 6.0) < 3 * std::sqrt(5.0 / 36.0 / pairs));

  // Small n against the MRCA read off whole trees.
  const auto g = make_power_weights(0.6, 1.0, 8);
  std::vector<double> lazy(9, 0.0), full(9, 0.0);
  for (int r = 0; r < 200000; ++r) {
    lazy[sample_mrca_pair(g, 8, rng)] += 1;
    const auto t = grow_wrt(g, 8, rng).tree;
    const auto i = sample_weight_measure(g, 8, rng), j = sample_weight_measure(g, 8, rng);
    full[mrca(t, i, j)] += 1;
  }
  for (std::size_t k = 1; k <= 8; ++k) {
    const double p = full[k] / 200000;
    CHECK(std::abs(lazy[k] - full[k]) / 200000 < 5 * std::sqrt(2 * p * (1 - p) / 200000) + 1e-4);
  }
}

TEST_CASE("expected_height_sum and degree_expectation") {
  const auto w = ones(1000);
  CHECK(degree_expectation(w, 1, 4) == doctest::Approx(11.0 / 6.0));
  CHECK(expected_height_sum(w, 4) == doctest::Approx(5.0 / 6.0));
  CHECK(degree_expectation(w, 4, 4) == 0.0);
  const auto p = make_power_weights(0.5, 1.0, 1000000);
  const double f6 = expected_height_sum(p, 1000000), f5 = expected_height_sum(p, 100000);
  CHECK((f6 - f5) / std::log(10.0) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("empirical degrees match degree_expectation") {
  for (const auto& w : {ones(200), make_power_weights(0.5, 1.0, 200)}) {
    std::vector<std::vector<double>> deg(10);
    Rng rng = make_rng(6);
    for (int r = 0; r < 100000; ++r) {
      const auto d = degrees(grow_wrt(w, 200, rng).tree);
      for (std::size_t k = 0; k < 10; ++k) deg[k].push_back(d[k]);
    }
    for (std::size_t k = 1; k <= 10; ++k) {
      const auto s = summarize(deg[k - 1]);
      CHECK(std::abs(s.mean - degree_expectation(w, k, 200)) < 4 * s.se);
    }
  }
}

TEST_CASE("degree scaling accumulator") {
  DegreeScalingAccumulator acc(0.5, 3);
  const std::vector<std::uint32_t> d1{2, 1, 0, 0}, d2{1, 2, 0, 0};
  acc.add_degrees(d1);
  acc.add_degrees(d2);
  const auto r = acc.report();
  CHECK(r.replicates == 2);
  CHECK(r.scaled[0].mean == doctest::Approx(0.75));
  CHECK(r.scaled_sq[0].mean == doctest::Approx((1.0 + 0.25) / 2));
  CHECK(r.max_is_first == 0.5);
  CHECK(r.lp_norm.mean == doctest::Approx(std::sqrt(1.25)));
  CHECK_THROWS_AS(acc.add_degrees(std::vector<std::uint32_t>{1, 0}), ParameterError);

  // Zero-weight vertices never get children.
  const auto w = WeightSequence::from_increments({1, 0, 1, 1, 1, 1, 1, 1});
  DegreeScalingAccumulator z(0.5, 2);
  z.set_weights(w, 1.0);
  Rng rng = make_rng(7);
  for (int i = 0; i < 20; ++i) z.add(grow_wrt(w, 8, rng).tree);
  CHECK(z.report().ratio[1].mean == 0.0);

  // Power weights: n^{-(1-gamma)} deg(u_1) C (1 - gamma) / w_1 -> 1.
  const auto p = make_power_weights(0.5, 1.0, 100000);
  std::vector<PlaneTree> trees;
  for (int i = 0; i < 100; ++i) trees.push_back(grow_wrt(p, 100000, rng).tree);
  const auto rep = degree_scaling_report(trees, &p, 0.5, 1.0, 5);
  CHECK(std::abs(rep.ratio[0].mean - 1.0) < 0.05);
  CHECK(rep.max_is_first > 0.5);
}
