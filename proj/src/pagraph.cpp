#include "wrtlab/pagraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "wrtlab/errors.hpp"
#include "wrtlab/fenwick.hpp"
#include "wrtlab/oracle.hpp"

namespace wrtlab {

std::uint64_t MultiGraph::merged_seed_degree() const {
  return std::accumulate(degree.begin(), degree.begin() + seed_count, std::uint64_t{0});
}

void validate_pagraph(const std::vector<std::uint32_t>& seed_degrees, std::size_t m, double alpha) {
  if (seed_degrees.empty()) throw ParameterError("seed graph must have a vertex");
  if (m == 0) throw ParameterError("m must be at least 1");
  if (!(alpha > -static_cast<double>(m))) throw ParameterError("alpha must exceed -m");
  for (auto d : seed_degrees) {
    if (!(alpha + d > 0.0)) throw ParameterError("alpha + d_i must be positive");
  }
}

namespace {

class GraphGrower {
 public:
  GraphGrower(const std::vector<std::uint32_t>& d, std::size_t m, double alpha, Rng& rng)
      : rng_(rng) {
    validate_pagraph(d, m, alpha);
    g_.seed_count = d.size();
    g_.m = m;
    g_.alpha = alpha;
    for (auto x : d) {
      g_.degree.push_back(x);
      weights_.push_back(alpha + x);
      max_ = std::max<std::uint64_t>(max_, x);
    }
  }

  void reserve(std::size_t n) {
    g_.degree.reserve(g_.seed_count + n);
    weights_.reserve(g_.seed_count + n);
  }

  void grow_to(std::size_t n, bool keep_edges) {
    while (g_.arrivals() + 1 < n) {
      const auto self = static_cast<std::uint32_t>(g_.degree.size());
      for (std::size_t e = 0; e < g_.m; ++e) {
        const std::size_t i = weights_.find(uniform01(rng_) * weights_.total()) - 1;
        weights_.add(i + 1, 1.0);
        max_ = std::max(max_, ++g_.degree[i]);
        if (keep_edges) g_.edges.emplace_back(self, static_cast<std::uint32_t>(i));
      }
      g_.degree.push_back(g_.m);
      max_ = std::max<std::uint64_t>(max_, g_.m);
      weights_.push_back(g_.alpha + static_cast<double>(g_.m));
    }
  }

  const MultiGraph& graph() const { return g_; }
  MultiGraph take() { return std::move(g_); }
  std::uint64_t max_degree() const { return max_; }

 private:
  Rng& rng_;
  MultiGraph g_;
  FenwickSampler weights_;
  std::uint64_t max_ = 0;
};

}  // namespace

MultiGraph grow_pa_graph(const std::vector<std::uint32_t>& seed_degrees, std::size_t m,
                         double alpha, std::size_t n, Rng& rng) {
  if (n == 0) throw ParameterError("graph time must be at least 1");
  GraphGrower g(seed_degrees, m, alpha, rng);
  g.reserve(n);
  g.grow_to(n, true);
  return g.take();
}

std::vector<std::uint64_t> pa_graph_max_degrees(const std::vector<std::uint32_t>& seed_degrees,
                                                std::size_t m, double alpha,
                                                const std::vector<std::size_t>& checkpoints,
                                                Rng& rng) {
  GraphGrower g(seed_degrees, m, alpha, rng);
  if (!checkpoints.empty()) g.reserve(checkpoints.back());
  std::vector<std::uint64_t> out;
  std::size_t prev = 0;
  for (auto n : checkpoints) {
    if (n == 0 || n <= prev) throw ParameterError("checkpoints must be positive and increasing");
    g.grow_to(n, false);
    out.push_back(g.max_degree());
    prev = n;
  }
  return out;
}

FitnessSequence pagraph_fitness(const std::vector<std::uint32_t>& seed_degrees, std::size_t m,
                                double alpha) {
  validate_pagraph(seed_degrees, m, alpha);
  double w = 0.0;
  for (auto d : seed_degrees) w += d + alpha;
  std::vector<double> period(m, 0.0);
  period.back() = static_cast<double>(m) + alpha;
  return FitnessSequence({w}, period);
}

PagraphLimitReport coupled_degree_limits(const std::vector<std::uint32_t>& seed_degrees,
                                         std::size_t m, double alpha, std::size_t n,
                                         std::size_t replicates, Rng& rng,
                                         std::size_t arrivals_kept) {
  validate_pagraph(seed_degrees, m, alpha);
  if (n < 2) throw ParameterError("degree limits need n >= 2");
  const double md = static_cast<double>(m);
  PagraphLimitReport r;
  r.n = n;
  r.replicates = replicates;
  r.exponent = 1.0 / (2.0 + alpha / md);
  r.time_change = std::pow(md, md / (2.0 * md + alpha));
  const double scale = std::pow(static_cast<double>(n), -r.exponent);
  const std::size_t k = seed_degrees.size();
  r.split.assign(k, {});
  r.arrivals.assign(std::min(arrivals_kept, n - 1), {});
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    GraphGrower g(seed_degrees, m, alpha, rng);
    g.reserve(n);
    g.grow_to(n, false);
    const auto& G = g.graph();
    const double seed_total = static_cast<double>(G.merged_seed_degree());
    r.merged_seed.push_back(scale * seed_total);
    for (std::size_t j = 0; j < k; ++j) r.split[j].push_back(G.degree[j] / seed_total);
    for (std::size_t i = 0; i < r.arrivals.size(); ++i) {
      r.arrivals[i].push_back(scale * static_cast<double>(G.degree[k + i]));
    }
    r.max_degree.push_back(scale * static_cast<double>(g.max_degree()));
  }
  if (replicates >= 2) {
    r.merged_seed_summary = summarize(r.merged_seed);
    for (const auto& s : r.split) r.split_summary.push_back(summarize(s));
  }
  return r;
}

PagraphCertificate certify_pagraph_coupling(const std::vector<std::uint32_t>& seed_degrees,
                                            std::size_t m, double alpha, std::size_t n,
                                            double tol) {
  validate_pagraph(seed_degrees, m, alpha);
  if (n == 0) throw ParameterError("graph time must be at least 1");
  const std::size_t N = pagraph_tree_size(n, m);
  if (N > 8) throw ParameterError("coupling certificate limited to 1 + (n-1) m <= 8");
  const std::size_t k = seed_degrees.size();

  // Keys: merged targets as PAT labels (seed -> 1, v_i -> 1 + (i-1) m), and
  // merged degree offsets.
  std::map<std::vector<std::uint32_t>, double> graph_traces, graph_degrees;
  std::vector<double> deg(seed_degrees.begin(), seed_degrees.end());
  std::vector<std::uint32_t> targets;
  auto pat_label = [&](std::size_t v) -> std::uint32_t {
    return v < k ? 1 : static_cast<std::uint32_t>(1 + (v - k + 1) * m);
  };
  auto merged_degrees = [&]() {
    std::vector<std::uint32_t> out(n, 0);
    double seed = 0.0;
    for (std::size_t j = 0; j < k; ++j) seed += deg[j] - seed_degrees[j];
    out[0] = static_cast<std::uint32_t>(std::lround(seed));
    for (std::size_t i = 1; i < n; ++i) out[i] = static_cast<std::uint32_t>(std::lround(deg[k + i - 1] - m));
    return out;
  };
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t arrival,
                                                                   std::size_t edge, double p) {
    if (arrival == n) {
      graph_traces[targets] += p;
      graph_degrees[merged_degrees()] += p;
      return;
    }
    if (edge == 0) deg.push_back(0.0);
    const std::size_t self = deg.size() - 1;
    double total = 0.0;
    for (std::size_t v = 0; v < self; ++v) total += alpha + deg[v];
    for (std::size_t v = 0; v < self; ++v) {
      const double q = (alpha + deg[v]) / total;
      deg[v] += 1.0;
      deg[self] += 1.0;
      targets.push_back(pat_label(v));
      if (edge + 1 == m) {
        walk(arrival + 1, 0, p * q);
      } else {
        walk(arrival, edge + 1, p * q);
      }
      targets.pop_back();
      deg[self] -= 1.0;
      deg[v] -= 1.0;
    }
    if (edge == 0) deg.pop_back();
  };
  walk(1, 0, 1.0);

  const auto f = pagraph_fitness(seed_degrees, m, alpha);
  std::map<std::vector<std::uint32_t>, double> pat_traces, pat_degrees;
  PagraphCertificate cert;
  cert.n = n;
  cert.tree_size = N;
  for (const auto& t : enumerate_traces(N)) {
    const double p = pat_trace_probability(f, t);
    cert.pat_total += p;
    if (p == 0.0) continue;
    pat_traces[t.choices] += p;
    std::vector<std::uint32_t> d(N + 1, 0);
    for (auto c : t.choices) ++d[c];
    std::vector<std::uint32_t> key(n);
    for (std::size_t i = 0; i < n; ++i) key[i] = d[1 + i * m];
    pat_degrees[key] += p;
  }
  for (const auto& [key, p] : graph_traces) cert.graph_total += p;

  auto diff = [](const auto& a, const auto& b) {
    double worst = 0.0;
    for (const auto& [key, p] : a) {
      const auto it = b.find(key);
      worst = std::max(worst, std::abs(p - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [key, p] : b) {
      if (!a.count(key)) worst = std::max(worst, p);
    }
    return worst;
  };
  cert.max_abs_diff = diff(graph_degrees, pat_degrees);
  cert.max_trace_abs_diff = diff(graph_traces, pat_traces);
  cert.outcomes = graph_degrees.size();
  cert.pass = cert.max_abs_diff <= tol && cert.max_trace_abs_diff <= tol &&
              std::abs(cert.graph_total - 1.0) <= tol && std::abs(cert.pat_total - 1.0) <= tol;
  return cert;
}

}  // namespace wrtlab
