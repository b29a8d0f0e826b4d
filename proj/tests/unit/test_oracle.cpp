#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <functional>

#include "wrtlab/errors.hpp"
#include "wrtlab/oracle.hpp"
#include "wrtlab/stat_tests.hpp"

using namespace wrtlab;

namespace {

GrowthTrace tr(std::vector<Vertex> c) { return GrowthTrace{std::move(c)}; }

const std::vector<FitnessSequence>& fitnesses() {
  static const std::vector<FitnessSequence> f = {
      make_constant_fitness(1.0, 1.0), make_constant_fitness(0.5, 2.0),
      make_periodic_fitness(1.0, {0.0, 1.0}), make_constant_fitness(-0.5, 1.0)};
  return f;
}

// WRT trace probability given explicit betas. W_k / W_m is the product of
// beta_k .. beta_{m-1}; working with ratios keeps tiny betas finite.
double wrt_given_betas(const std::vector<double>& beta, const GrowthTrace& t) {
  auto ratio = [&](std::size_t k, std::size_t m) {
    double r = 1.0;
    for (std::size_t i = k; i < m; ++i) r *= beta[i - 1];
    return r;
  };
  double p = 1.0;
  for (std::size_t m = 2; m <= t.size(); ++m) {
    const Vertex k = t.choices[m - 2];
    const double prev = k == 1 ? 0.0 : ratio(k - 1, m - 1);
    p *= ratio(k, m - 1) - prev;
  }
  return p;
}

// E over independent beta_k ~ Beta(A_k + k, a_{k+1}) by nested quadrature.
double mixture_by_quadrature(const FitnessSequence& f, const GrowthTrace& t) {
  const std::size_t dims = t.size() >= 3 ? t.size() - 2 : 0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  std::vector<double> beta(dims, 1.0);
  std::function<double(std::size_t)> level = [&](std::size_t k) -> double {
    if (k > dims) return wrt_given_betas(beta, t);
    const double a = f.A(k) + k;
    const double b = f.a(k + 1);
    if (b == 0.0) {
      beta[k - 1] = 1.0;
      return level(k + 1);
    }
    const double norm = boost::math::beta(a, b);
    auto g = [&](double x, double xc) {
      if (!(x > 0.0 && x < 1.0)) return 0.0;
      beta[k - 1] = x;
      const double one_minus = x > 0.5 ? xc : 1.0 - x;
      return std::pow(x, a - 1.0) * std::pow(one_minus, b - 1.0) / norm * level(k + 1);
    };
    return integrator.integrate(g, 0.0, 1.0);
  };
  return level(1);
}

}  // namespace

TEST_CASE("enumerate_traces counts (n-1)! traces") {
  CHECK(enumerate_traces(1).size() == 1);
  CHECK(enumerate_traces(2).size() == 1);
  CHECK(enumerate_traces(3).size() == 2);
  CHECK(enumerate_traces(5).size() == 24);
  CHECK(enumerate_traces(8).size() == 5040);
  CHECK_THROWS_AS(enumerate_traces(9), ParameterError);
  const auto t4 = enumerate_traces(4);
  CHECK(t4.front() == tr({1, 1, 1}));
  CHECK(t4.back() == tr({1, 2, 3}));
  for (const auto& t : t4) CHECK_NOTHROW(PlaneTree{t});
}

TEST_CASE("pat_trace_probability frozen values") {
  const auto f = make_constant_fitness(1.0, 1.0);
  CHECK(pat_trace_probability(f, tr({1, 1})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(pat_trace_probability(f, tr({1, 2})) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Step 4 weights (3, 1, 1) over A_3 + 2 = 5.
  CHECK(pat_trace_probability(f, tr({1, 1, 2})) == doctest::Approx(2.0 / 3.0 * 1.0 / 5.0));
  CHECK(pat_trace_probability(f, tr({1, 1, 1})) == doctest::Approx(2.0 / 3.0 * 3.0 / 5.0));
  const auto star = FitnessSequence({2.0}, {0.0});
  CHECK(pat_trace_probability(star, tr({1, 1, 1})) == 1.0);
  CHECK(pat_trace_probability(star, tr({1, 2, 1})) == 0.0);
  CHECK(pat_trace_probability(star, tr({1, 1, 3})) == 0.0);
  // a_1 = -0.5: forced first step, then root weight 0.5 against 1 for u_2.
  const auto neg = make_constant_fitness(-0.5, 1.0);
  CHECK(pat_trace_probability(neg, tr({1})) == 1.0);
  CHECK(pat_trace_probability(neg, tr({1, 1})) == doctest::Approx(0.5 / 1.5));
}

TEST_CASE("wrt_mixture_trace_probability frozen values") {
  const auto f = make_constant_fitness(1.0, 1.0);
  CHECK(wrt_mixture_trace_probability(f, tr({1, 1})) == doctest::Approx(2.0 / 3.0));
  CHECK(wrt_mixture_trace_probability(f, tr({1, 2})) == doctest::Approx(1.0 / 3.0));
  for (const auto& g : fitnesses()) CHECK(wrt_mixture_trace_probability(g, tr({1})) == 1.0);
}

TEST_CASE("wrt_trace_probability frozen values") {
  const auto ones = WeightSequence::from_increments({1, 1, 1, 1});
  CHECK(wrt_trace_probability(ones, tr({1, 1})) == doctest::Approx(0.5));
  const auto star = WeightSequence::from_increments({1, 0, 0, 0});
  CHECK(wrt_trace_probability(star, tr({1, 1, 1})) == 1.0);
  CHECK(wrt_trace_probability(star, tr({1, 2, 1})) == 0.0);
  const auto w12 = WeightSequence::from_increments({1, 2});
  CHECK(wrt_trace_probability(w12, tr({1, 2})) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("mixture probabilities agree with direct quadrature over the betas") {
  for (const auto& f : fitnesses()) {
    for (std::size_t n : {3, 4}) {
      for (const auto& t : enumerate_traces(n)) {
        const double q = mixture_by_quadrature(f, t);
        CHECK(wrt_mixture_trace_probability(f, t) == doctest::Approx(q).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("certify_theorem1 passes on the reference fitnesses") {
  for (const auto& f : fitnesses()) {
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto r = certify_theorem1(f, n);
      CHECK(r.pass);
      CHECK(r.max_abs_diff <= 1e-10);
      CHECK(std::abs(r.pat_total - 1.0) <= 1e-10);
      CHECK(std::abs(r.mixture_total - 1.0) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(certify_theorem1(fitnesses()[0], 7), ParameterError);
}

TEST_CASE("probabilities are consistent under prefixing") {
  for (const auto& f : fitnesses()) {
    for (const auto& t : enumerate_traces(4)) {
      double sp = 0.0, sw = 0.0;
      for (Vertex k = 1; k <= 4; ++k) {
        GrowthTrace e = t;
        e.choices.push_back(k);
        sp += pat_trace_probability(f, e);
        sw += wrt_mixture_trace_probability(f, e);
      }
      CHECK(sp == doctest::Approx(pat_trace_probability(f, t)).epsilon(1e-12));
      CHECK(sw == doctest::Approx(wrt_mixture_trace_probability(f, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("grow_wrt trace frequencies match wrt_trace_probability at n = 4") {
  const auto w = make_power_weights(1.0, 1.0, 4);
  const auto traces = enumerate_traces(4);
  std::vector<double> counts(traces.size(), 0.0), probs;
  for (const auto& t : traces) probs.push_back(wrt_trace_probability(w, t));
  Rng rng = make_rng(41);
  const int runs = 1000000;
  for (int r = 0; r < runs; ++r) {
    const auto g = grow_wrt(w, 4, rng);
    const auto& c = g.trace.choices;
    counts[(c[1] - 1) * 3 + (c[2] - 1)] += 1.0;
  }
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const double p = probs[i];
    const double sd = std::sqrt(p * (1 - p) / runs);
    CHECK(std::abs(counts[i] / runs - p) < 4 * sd);
  }
}
