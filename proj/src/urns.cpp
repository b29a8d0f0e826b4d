#include "wrtlab/urns.hpp"

#include <cmath>

#include "wrtlab/errors.hpp"
#include "wrtlab/fenwick.hpp"

namespace wrtlab {

UrnTrajectory run_time_dependent_urn(double a, double b, std::size_t start_k,
                                     const UrnStepWeights& s, std::size_t N, Rng& rng) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw ParameterError("urn masses must be non-negative");
  if (!(a + b > 0.0)) throw ParameterError("urn needs a + b > 0");
  UrnTrajectory out;
  out.times.reserve(N + 1);
  out.red.reserve(N + 1);
  out.total.reserve(N + 1);
  double red = a, total = a + b;
  out.times.push_back(start_k);
  out.red.push_back(red);
  out.total.push_back(total);
  for (std::size_t i = 1; i <= N; ++i) {
    const std::size_t n = start_k + i;
    const double sn = s(n);
    if (!(sn >= 0.0)) throw ParameterError("urn step weights must be non-negative");
    if (uniform01(rng) * total < red) red += sn;
    total += sn;
    out.times.push_back(n);
    out.red.push_back(red);
    out.total.push_back(total);
  }
  return out;
}

UrnTrajectory run_time_dependent_urn(double a, double b, std::size_t start_k, double s,
                                     std::size_t N, Rng& rng) {
  return run_time_dependent_urn(a, b, start_k, [s](std::size_t) { return s; }, N, rng);
}

const char* to_string(UrnMode mode) {
  return mode == UrnMode::kExchangeable ? "exchangeable" : "definetti";
}

UrnMode parse_urn_mode(const std::string& name) {
  if (name == "exchangeable") return UrnMode::kExchangeable;
  if (name == "definetti") return UrnMode::kDeFinetti;
  throw ParameterError("unknown urn mode: " + name);
}

GrownTree grow_pat_via_urns(const FitnessSequence& fitness, std::size_t n, Rng& rng,
                            UrnMode mode) {
  if (n == 0) throw ParameterError("tree size must be at least 1");
  GrowthTrace trace;
  trace.choices.reserve(n - 1);
  std::vector<double> red, total, beta;
  const bool exchangeable = mode == UrnMode::kExchangeable;
  for (std::size_t m = 1; m < n; ++m) {
    if (m >= 2) {
      const std::size_t k = m - 1;
      const double x = fitness.A(k) + static_cast<double>(k);
      if (exchangeable) {
        red.push_back(x);
        total.push_back(fitness.A(k + 1) + static_cast<double>(k));
      } else {
        beta.push_back(sample_beta(x, fitness.a(k + 1), rng).value);
      }
    }
    Vertex parent = 1;
    for (std::size_t k = m - 1; k >= 1; --k) {
      bool lower;
      if (exchangeable) {
        lower = uniform01(rng) * total[k - 1] < red[k - 1];
        total[k - 1] += 1.0;
        if (lower) red[k - 1] += 1.0;
      } else {
        lower = uniform01(rng) < beta[k - 1];
      }
      if (!lower) {
        parent = static_cast<Vertex>(k + 1);
        break;
      }
    }
    trace.choices.push_back(parent);
  }
  PlaneTree tree(trace);
  return {std::move(tree), std::move(trace)};
}

namespace {

// Drives the immigration urn; visit(t, red, total) is called for t = 1..n.
template <class Visit>
void immigration_run(const FitnessSequence& fitness, std::size_t n, Rng& rng, Visit&& visit) {
  if (n == 0) throw ParameterError("urn horizon must be at least 1");
  const double a1 = fitness.a(1);
  double red = a1, total = a1;
  visit(std::size_t{1}, red, total);
  for (std::size_t t = 2; t <= n; ++t) {
    if (t == 2) {
      red += 1.0;
    } else if (uniform01(rng) * total < red) {
      red += 1.0;
    }
    total += 1.0 + fitness.a(t);
    visit(t, red, total);
  }
}

}  // namespace

UrnTrajectory run_immigration_urn(const FitnessSequence& fitness, std::size_t n, Rng& rng) {
  UrnTrajectory out;
  out.times.reserve(n);
  out.red.reserve(n);
  out.total.reserve(n);
  immigration_run(fitness, n, rng, [&](std::size_t t, double r, double z) {
    out.times.push_back(t);
    out.red.push_back(r);
    out.total.push_back(z);
  });
  return out;
}

std::vector<double> immigration_red_at(const FitnessSequence& fitness,
                                       const std::vector<std::size_t>& times, Rng& rng) {
  if (times.empty()) return {};
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] == 0 || (i > 0 && times[i] <= times[i - 1])) {
      throw ParameterError("checkpoint times must be positive and increasing");
    }
  }
  std::vector<double> out;
  out.reserve(times.size());
  std::size_t next = 0;
  immigration_run(fitness, times.back(), rng, [&](std::size_t t, double r, double) {
    if (t == times[next]) {
      out.push_back(r);
      ++next;
    }
  });
  return out;
}

GrownTree grow_pat_root_split(const FitnessSequence& fitness, std::size_t n, Rng& coin_rng,
                              Rng& rest_rng) {
  if (n == 0) throw ParameterError("tree size must be at least 1");
  GrowthTrace trace;
  trace.choices.reserve(n - 1);
  // Labels 2..m live at Fenwick index label - 1.
  FenwickSampler rest;
  rest.reserve(n);
  const double a1 = fitness.a(1);
  double red = a1, total = a1;
  for (std::size_t m = 1; m < n; ++m) {
    const std::size_t t = m + 1;
    bool root = true;
    if (t > 2) root = uniform01(coin_rng) * total < red;
    if (root) {
      red += 1.0;
      trace.choices.push_back(1);
    } else {
      const std::size_t k = rest.find(uniform01(rest_rng) * rest.total());
      rest.add(k, 1.0);
      trace.choices.push_back(static_cast<Vertex>(k + 1));
    }
    total += 1.0 + fitness.a(t);
    rest.push_back(fitness.a(t));
  }
  PlaneTree tree(trace);
  return {std::move(tree), std::move(trace)};
}

std::vector<double> immigration_fluctuation_samples(const FitnessSequence& fitness, double c,
                                                    std::size_t n, std::size_t horizon_mult,
                                                    std::size_t replicates, Rng& rng) {
  if (!(c > 0.0)) throw ParameterError("fluctuations need c > 0");
  if (horizon_mult < 10) throw ParameterError("horizon_mult must be at least 10");
  if (n < 2) throw ParameterError("fluctuations need n >= 2");
  const std::size_t far = n * horizon_mult;
  const double e = 1.0 / (c + 1.0);
  const double scale_n = std::pow(static_cast<double>(n), -e);
  const double scale_far = std::pow(static_cast<double>(far), -e);
  const double root_n = std::pow(static_cast<double>(n), 0.5 * e);
  std::vector<double> out;
  out.reserve(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    const auto red = immigration_red_at(fitness, {n, far}, rng);
    const double dn = scale_n * red[0];
    const double dfar = scale_far * red[1];
    out.push_back(root_n * (dfar - dn) / std::sqrt(dn));
  }
  return out;
}

}  // namespace wrtlab
