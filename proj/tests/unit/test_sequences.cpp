#include <doctest.h>

#include <cmath>

#include "wrtlab/errors.hpp"
#include "wrtlab/sequences.hpp"
#include "wrtlab/stat_tests.hpp"

using namespace wrtlab;

TEST_CASE("make_power_weights") {
  const auto u = make_power_weights(1.0, 1.0, 5);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(u.w(n) == 1.0);
  CHECK(u.W(5) == 5.0);

  const auto sq = make_power_weights(2.0, 1.0, 3);
  CHECK(sq.w(1) == 1.0);
  CHECK(sq.w(2) == 3.0);
  CHECK(sq.w(3) == 5.0);
  CHECK(sq.W(3) == 9.0);

  CHECK(make_power_weights(0.5, 2.0, 2).W(2) == doctest::Approx(2.8284271247461903));

  const auto p = make_power_weights(0.37, 1.7, 10000);
  for (std::size_t n = 1; n <= 10000; ++n) {
    REQUIRE(p.W(n) / (1.7 * std::pow(double(n), 0.37)) == 1.0);
    REQUIRE(p.W(n) - p.W(n - 1) == p.w(n));
  }
  CHECK_THROWS_AS(make_power_weights(0.0, 1.0, 3), ParameterError);
  CHECK_THROWS_AS(make_power_weights(1.0, -1.0, 3), ParameterError);
}

TEST_CASE("geometric weights stay finite in log space") {
  const auto g = make_geometric_weights(2.0, 10000);
  CHECK_FALSE(g.finite());
  CHECK(std::isfinite(g.log_W(10000)));
  CHECK(g.ratio(10000) == doctest::Approx(0.5));
  CHECK(g.log_W(3) == doctest::Approx(std::log(2.0 + 4.0 + 8.0)));
  const auto h = make_geometric_weights(0.5, 60);
  CHECK(h.finite());
  CHECK(h.W(60) == doctest::Approx(1.0));
}

TEST_CASE("make_constant_fitness") {
  const auto f = make_constant_fitness(1.0, 1.0);
  CHECK(f.A(0) == 0.0);
  CHECK(f.A(1) == 1.0);
  CHECK(f.A(2) == 2.0);
  CHECK(f.A(3) == 3.0);
  CHECK(f.A(4) == 4.0);
  CHECK(make_constant_fitness(0.5, 2.0).A(3) == 4.5);
  CHECK(make_constant_fitness(-0.5, 1.0).A(2) == 0.5);
  CHECK_THROWS_AS(make_constant_fitness(-1.0, 1.0), ParameterError);
  CHECK_THROWS_AS(make_constant_fitness(1.0, -0.5), ParameterError);
}

TEST_CASE("make_periodic_fitness") {
  const auto f = make_periodic_fitness(1.0, {0.0, 1.0});
  CHECK(f.values(5) == std::vector<double>{1, 0, 1, 0, 1});
  CHECK(f.period_mean() == 0.5);
  CHECK(make_periodic_fitness(0.0, {2.0}).values(3) == std::vector<double>{0, 2, 2});
  CHECK(make_periodic_fitness(1.0, {1.0, 0.0, 0.0}).A(4) == 2.0);
  CHECK_THROWS_AS(make_periodic_fitness(1.0, {0.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(make_periodic_fitness(1.0, {}), ParameterError);

  const auto g = make_periodic_fitness(0.3, {2.0, 0.0, 5.0});
  double s = 0.0;
  for (std::size_t n = 1; n <= 100; ++n) {
    s += g.a(n);
    REQUIRE(g.A(n) == doctest::Approx(s));
  }
}

TEST_CASE("weights_from_betas") {
  const auto ones = weights_from_betas(BetaCoupling::from_values({1, 1, 1}));
  for (std::size_t n = 1; n <= 4; ++n) CHECK(ones.W(n) == 1.0);
  CHECK(ones.w(1) == 1.0);
  CHECK(ones.w(2) == 0.0);
  CHECK(ones.w(4) == 0.0);

  const auto w = weights_from_betas(BetaCoupling::from_values({0.5, 1.0 / 3.0}));
  CHECK(w.W(1) == 1.0);
  CHECK(w.W(2) == doctest::Approx(2.0));
  CHECK(w.W(3) == doctest::Approx(6.0));
  CHECK(w.w(2) == doctest::Approx(1.0));
  CHECK(w.w(3) == doctest::Approx(4.0));

  CHECK(weights_from_betas(BetaCoupling::from_values({2.0 / 3.0})).w(2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(BetaCoupling::from_values({0.5, 0.0}), DomainError);
}

TEST_CASE("beta coupling round trip and Dirac convention") {
  Rng rng = make_rng(7);
  const auto c = sample_beta_coupling(make_constant_fitness(0.5, 2.0), 5000, rng);
  CHECK(c.size() == 4999);
  const auto w = weights_from_betas(c);
  CHECK(w.origin() == WeightOrigin::kBetaSampled);
  for (std::size_t k = 1; k < 5000; ++k) {
    const double b = std::exp(w.log_W(k) - w.log_W(k + 1));
    REQUIRE(std::abs(b / c.beta(k) - 1.0) < 1e-12);
  }

  const auto star = sample_beta_coupling(FitnessSequence({1.0}, {0.0}), 50, rng);
  for (double b : star.betas()) CHECK(b == 1.0);
  const auto ws = weights_from_betas(star);
  for (std::size_t n = 1; n <= 50; ++n) CHECK(ws.W(n) == 1.0);

  const auto sparse = sample_beta_coupling(make_periodic_fitness(1.0, {0.0, 1.0}), 20, rng);
  for (std::size_t k = 1; k < 20; k += 2) CHECK(sparse.beta(k) == 1.0);

  CHECK(sample_beta_coupling(make_constant_fitness(1, 1), 2, rng).size() == 1);
  CHECK(c.beta(0) == 0.0);
}

TEST_CASE("beta coupling means match Beta(A_k + k, a_{k+1})") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{-0.5, 1.0}}) {
    const auto f = make_constant_fitness(a, b);
    std::vector<std::vector<double>> draws(4);
    Rng rng = make_rng(11);
    for (int r = 0; r < 100000; ++r) {
      const auto c = sample_beta_coupling(f, 5, rng);
      for (std::size_t k = 1; k <= 4; ++k) draws[k - 1].push_back(c.beta(k));
    }
    for (std::size_t k = 1; k <= 4; ++k) {
      const double sa = f.A(k) + k, sb = f.a(k + 1);
      const auto s = summarize(draws[k - 1]);
      CHECK(std::abs(s.mean - sa / (sa + sb)) < 4 * s.se);
    }
  }
}

TEST_CASE("coupling extension keeps the prefix") {
  const auto f = make_constant_fitness(1.0, 3.0);
  const auto short_c = sample_beta_coupling(f, 100, std::uint64_t{5});
  const auto long_c = sample_beta_coupling(f, 300, std::uint64_t{5});
  const auto ext = short_c.extended(300);
  CHECK(ext.betas() == long_c.betas());
  CHECK_THROWS_AS(BetaCoupling::from_values({0.5}).extended(5), DomainError);
}

TEST_CASE("log-space weights do not overflow") {
  const auto c = sample_beta_coupling(make_constant_fitness(1.0, 10.0), 1000000, std::uint64_t{3});
  const auto w = weights_from_betas(c);
  double worst = 0.0;
  for (std::size_t n = 1; n <= w.size(); ++n) worst = std::max(worst, std::abs(w.log_W(n)));
  CHECK(std::isfinite(worst));
}

TEST_CASE("estimate_profile") {
  const auto p = estimate_profile(make_power_weights(0.5, 1.0, 10000));
  CHECK(std::abs(p.gamma_hat - 0.5) < 1e-6);
  CHECK(p.C_hat == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::isinf(p.residual_exponent));
  for (double g : {0.25, 1.0, 3.0}) {
    CHECK(std::abs(estimate_profile(make_power_weights(g, 2.0, 10000)).gamma_hat - g) < 1e-3);
  }
  CHECK_THROWS_AS(estimate_profile(make_power_weights(1.0, 1.0, 50)), InsufficientDataError);

  // W_n = n + log n: residual decays like log(n)/n.
  std::vector<double> W;
  for (int n = 1; n <= 100000; ++n) W.push_back(n + std::log(double(n)));
  const auto q = estimate_profile(WeightSequence::from_cumulative(W));
  CHECK(q.residual_exponent > 0.5);

  const auto fp = estimate_profile(make_periodic_fitness(1.0, {0.0, 1.0}), 100000);
  CHECK(fp.c_hat == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(fp.gamma_predicted == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("estimate_profile recovers c/(c+1) from sampled couplings") {
  const auto w1 = weights_from_betas(
      sample_beta_coupling(make_constant_fitness(1.0, 1.0), 100000, std::uint64_t{21}));
  CHECK(std::abs(estimate_profile(w1).gamma_hat - 0.5) < 0.02);
  const auto w2 = weights_from_betas(
      sample_beta_coupling(make_periodic_fitness(1.0, {0.0, 1.0}), 100000, std::uint64_t{22}));
  CHECK(std::abs(estimate_profile(w2).gamma_hat - 1.0 / 3.0) < 0.02);
}

TEST_CASE("limit_weights") {
  const auto star = sample_beta_coupling(FitnessSequence({1.0}, {0.0}), 20000, std::uint64_t{1});
  const auto lw = limit_weights(star, 1.0, 20000);
  // W_n = 1, so Z_hat is the window average of n^{-1/2}.
  double s = 0.0;
  for (int n = 10000; n <= 20000; ++n) s += 1.0 / std::sqrt(double(n));
  CHECK(lw.Z_hat == doctest::Approx(s / 10001));
  CHECK(lw.m[0] == doctest::Approx(2.0 / lw.Z_hat));
  for (std::size_t n = 2; n <= 20000; ++n) REQUIRE(lw.m[n - 1] == 0.0);
  CHECK_THROWS_AS(limit_weights(star, 1.0, 30000), RangeError);

  // m_1 has the law of M_1 ~ ML(1/2, 1/2) in the limit: mean sqrt(pi).
  const auto f = make_constant_fitness(1.0, 1.0);
  Rng rng = make_rng(99);
  std::vector<double> m1;
  for (int r = 0; r < 2000; ++r) {
    m1.push_back(limit_weights(sample_beta_coupling(f, 20000, rng), 1.0, 20000).m[0]);
  }
  const auto s1 = summarize(m1);
  CHECK(std::abs(s1.mean - std::sqrt(M_PI)) < 4 * s1.se + 0.01);
}
