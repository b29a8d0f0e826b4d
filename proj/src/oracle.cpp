#include "wrtlab/oracle.hpp"

#include <cmath>
#include <string>

#include "wrtlab/errors.hpp"
#include "wrtlab/limits.hpp"

namespace wrtlab {

std::vector<GrowthTrace> enumerate_traces(std::size_t n) {
  if (n < 1) throw ParameterError("trace enumeration requires n >= 1");
  if (n > 8) throw ParameterError("trace enumeration refused for n > 8");
  std::vector<GrowthTrace> out;
  GrowthTrace cur;
  cur.choices.assign(n - 1, 1);
  while (true) {
    out.push_back(cur);
    // Odometer over positions; position i (parent of u_{i+2}) ranges over 1..i+1.
    std::size_t pos = n - 1;
    while (pos > 0 && cur.choices[pos - 1] == pos) --pos;
    if (pos == 0) return out;
    ++cur.choices[pos - 1];
    for (std::size_t j = pos; j + 1 < n; ++j) cur.choices[j] = 1;
  }
}

double pat_trace_probability(const FitnessSequence& fitness, const GrowthTrace& trace) {
  const std::size_t n = trace.size();
  if (n < 2) return 1.0;
  if (trace.choices[0] != 1) return 0.0;
  std::vector<double> deg(n + 1, 0.0);
  deg[1] = 1.0;
  double p = 1.0;
  for (std::size_t m = 3; m <= n; ++m) {
    const Vertex k = trace.choices[m - 2];
    if (k < 1 || k >= m) throw ParameterError("invalid trace entry");
    const double num = fitness.a(k) + deg[k];
    const double den = fitness.A(m - 1) + static_cast<double>(m) - 2.0;
    p *= num / den;
    deg[k] += 1.0;
  }
  return p;
}

double wrt_mixture_trace_probability(const FitnessSequence& fitness, const GrowthTrace& trace) {
  const std::size_t n = trace.size();
  // Step to m+1 vertices with parent k contributes beta_{m-1} ... beta_k (1 - beta_{k-1}).
  std::vector<unsigned> p(n + 1, 0), q(n + 1, 0);
  for (std::size_t m = 1; m + 1 <= n; ++m) {
    const Vertex k = trace.choices[m - 1];
    if (k < 1 || k > m) throw ParameterError("invalid trace entry");
    for (std::size_t j = k; j + 1 <= m; ++j) ++p[j];
    if (k >= 2) ++q[k - 1];
  }
  double prob = 1.0;
  for (std::size_t j = 1; j + 1 <= n; ++j) {
    prob *= beta_mixed_moment(fitness.A(j) + static_cast<double>(j), fitness.a(j + 1), p[j], q[j]);
  }
  return prob;
}

double wrt_trace_probability(const WeightSequence& weights, const GrowthTrace& trace) {
  const std::size_t n = trace.size();
  if (n > weights.size() + 1) throw RangeError("weights are not defined up to the trace length");
  double p = 1.0;
  for (std::size_t m = 2; m <= n; ++m) {
    const Vertex k = trace.choices[m - 2];
    if (k < 1 || k >= m) throw ParameterError("invalid trace entry");
    p *= weights.w(k) / weights.W(m - 1);
  }
  return p;
}

Theorem1Report certify_theorem1(const FitnessSequence& fitness, std::size_t n, double tolerance) {
  if (n > 6) throw ParameterError("certificate refused for n > 6");
  Theorem1Report r{n, 0.0, 0.0, 0.0, false, {}, {}};
  for (const GrowthTrace& t : enumerate_traces(n)) {
    const double pp = pat_trace_probability(fitness, t);
    const double pw = wrt_mixture_trace_probability(fitness, t);
    r.pat_total += pp;
    r.mixture_total += pw;
    const double d = std::abs(pp - pw);
    if (d > r.max_abs_diff || r.rows.empty()) {
      r.max_abs_diff = std::max(r.max_abs_diff, d);
      r.worst_trace = t;
    }
    r.rows.push_back({t, pp, pw});
  }
  r.pass = r.max_abs_diff <= tolerance && std::abs(r.pat_total - 1.0) <= tolerance &&
           std::abs(r.mixture_total - 1.0) <= tolerance;
  return r;
}

}  // namespace wrtlab
