#include "wrtlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wrtlab/errors.hpp"

namespace wrtlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log of Sum_k exp(terms[k]).
double log_sum_exp(std::span<const double> terms) {
  double hi = -kInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == -kInf || hi == kInf) return hi;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - hi);
  return hi + std::log(s);
}

void require_weights(const WeightSequence& weights, std::size_t n) {
  if (n > weights.size()) throw RangeError("weight sequence shorter than the tree");
}

double log_ratio(const WeightSequence& w, std::size_t i) { return w.log_w(i) - w.log_W(i); }

}  // namespace

std::vector<std::uint64_t> profile(const PlaneTree& tree) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 1; i <= tree.size(); ++i) {
    const std::size_t h = tree.depth(i);
    if (h >= out.size()) out.resize(h + 1, 0);
    ++out[h];
  }
  return out;
}

double f_gamma(double gamma, double z) {
  return 1.0 + gamma * (std::exp(z) - 1.0 - z * std::exp(z));
}

double solve_z_plus(double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
  double hi = 1.0;
  while (f_gamma(gamma, hi) >= 0.0) hi *= 2.0;
  double lo = 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f_gamma(gamma, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double z_minus(double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
  return gamma > 1.0 ? std::log((gamma - 1.0) / gamma) : -kInf;
}

double height_constant(double gamma) { return gamma * std::exp(solve_z_plus(gamma)); }

double ProfileAsymptotics::phi(double z) const { return gamma * std::expm1(z); }

ProfileAsymptotics profile_asymptotics(double gamma) {
  return {gamma, solve_z_plus(gamma), z_minus(gamma)};
}

double gaussian_profile_prediction(std::size_t n, double gamma, double k) {
  if (n < 3) throw ParameterError("profile prediction needs n >= 3");
  if (!(gamma > 0.0)) throw ParameterError("gamma must be positive");
  const double L = std::log(static_cast<double>(n));
  const double x = (k - gamma * L) / std::sqrt(gamma * L);
  return static_cast<double>(n) / std::sqrt(2.0 * M_PI * L) * std::exp(-0.5 * x * x);
}

double log_laplace_profile(const PlaneTree& tree, double z) {
  const auto L = profile(tree);
  std::vector<double> terms(L.size());
  for (std::size_t k = 0; k < L.size(); ++k) {
    terms[k] = std::log(static_cast<double>(L[k])) + z * static_cast<double>(k);
  }
  return log_sum_exp(terms);
}

double laplace_profile(const PlaneTree& tree, double z) {
  return std::exp(log_laplace_profile(tree, z));
}

double normalized_N(const PlaneTree& tree, double gamma, double z) {
  if (z == 0.0) return 1.0;
  const double phi = gamma * std::expm1(z);
  return std::exp(log_laplace_profile(tree, z) -
                  (1.0 + phi) * std::log(static_cast<double>(tree.size())));
}

double weighted_laplace(const PlaneTree& tree, const WeightSequence& weights, double z) {
  const std::size_t n = tree.size();
  require_weights(weights, n);
  std::vector<double> terms(n);
  for (std::size_t i = 1; i <= n; ++i) {
    terms[i - 1] = weights.log_w(i) + z * static_cast<double>(tree.depth(i));
  }
  return std::exp(log_sum_exp(terms) - weights.log_W(n));
}

double log_C_n(const WeightSequence& weights, double z, std::size_t n) {
  require_weights(weights, n);
  const double ez = std::expm1(z);
  double s = 0.0;
  for (std::size_t i = 2; i <= n; ++i) {
    const double x = ez * std::exp(log_ratio(weights, i));
    if (!(1.0 + x > 0.0)) throw DomainError("non-positive factor in C_n");
    s += std::log1p(x);
  }
  return s;
}

double C_n(const WeightSequence& weights, double z, std::size_t n) {
  return std::exp(log_C_n(weights, z, n));
}

double M_n(const PlaneTree& tree, const WeightSequence& weights, double z) {
  const std::size_t n = tree.size();
  require_weights(weights, n);
  std::vector<double> terms(n);
  for (std::size_t i = 1; i <= n; ++i) {
    terms[i - 1] = weights.log_w(i) + z * static_cast<double>(tree.depth(i));
  }
  return std::exp(log_sum_exp(terms) - weights.log_W(n) - log_C_n(weights, z, n));
}

const char* to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::kWeight: return "weight";
    case MeasureKind::kDegree: return "degree";
    case MeasureKind::kUniform: return "uniform";
  }
  return "?";
}

TreeMeasure weight_measure(const PlaneTree& tree, const WeightSequence& weights) {
  const std::size_t n = tree.size();
  require_weights(weights, n);
  TreeMeasure m{MeasureKind::kWeight, std::vector<double>(n)};
  for (std::size_t k = 1; k <= n; ++k) m.atoms[k - 1] = std::exp(weights.log_w(k) - weights.log_W(n));
  return m;
}

TreeMeasure degree_measure(const PlaneTree& tree, const FitnessSequence& b) {
  const std::size_t n = tree.size();
  if (n < 2) throw ParameterError("degree measure needs n >= 2");
  TreeMeasure m{MeasureKind::kDegree, std::vector<double>(n)};
  const double denom = b.A(n) + static_cast<double>(n) - 1.0;
  for (std::size_t k = 1; k <= n; ++k) {
    m.atoms[k - 1] = (b.a(k) + static_cast<double>(tree.out_degree(k))) / denom;
  }
  return m;
}

TreeMeasure uniform_measure(const PlaneTree& tree) {
  const std::size_t n = tree.size();
  return {MeasureKind::kUniform, std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

double subtree_mass(const TreeMeasure& measure, const PlaneTree& tree, std::size_t k) {
  if (measure.atoms.size() != tree.size()) throw ParameterError("measure and tree differ in size");
  if (k < 1 || k > tree.size()) throw RangeError("vertex label out of range");
  double s = 0.0;
  std::vector<Vertex> stack{static_cast<Vertex>(k)};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    s += measure.atoms[v - 1];
    for (Vertex c : tree.children(v)) stack.push_back(c);
  }
  return s;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::kAtomic: return "atomic";
    case Regime::kDiffuseBoundary: return "diffuse_boundary";
    case Regime::kSingleLeaf: return "single_leaf";
    case Regime::kUndetermined: return "undetermined";
  }
  return "?";
}

namespace {

enum class Verdict { kConverges, kDiverges, kUnclear };

struct BlockTest {
  Verdict verdict;
  double last_ratio;
  double last_block_log;
};

// log_term(i) for i = 1..N; dyadic block sums in log space.
template <class F>
BlockTest dyadic_test(std::size_t N, F&& log_term) {
  std::vector<double> blocks;
  for (std::size_t lo = 1; 2 * lo - 1 <= N; lo *= 2) {
    double s = -kInf;
    for (std::size_t i = lo; i < 2 * lo; ++i) s = log_add(s, log_term(i));
    blocks.push_back(s);
  }
  auto ratio = [&](std::size_t j) {
    const double a = blocks[j - 1], b = blocks[j];
    if (b == -kInf) return 0.0;
    if (a == -kInf) return kInf;
    return std::exp(b - a);
  };
  const std::size_t J = blocks.size() - 1;
  const double r1 = ratio(J - 1), r2 = ratio(J);
  Verdict v = Verdict::kUnclear;
  if (r1 < 0.75 && r2 < 0.75) v = Verdict::kConverges;
  if (r1 >= 0.95 && r2 >= 0.95) v = Verdict::kDiverges;
  return {v, r2, blocks[J]};
}

}  // namespace

RegimeReport measure_regime(const WeightSequence& weights, std::size_t horizon) {
  const std::size_t N = horizon == 0 ? weights.size() : horizon;
  require_weights(weights, N);
  if (N < 63) throw InsufficientDataError("regime classification needs at least 63 weights");
  const auto tw = dyadic_test(N, [&](std::size_t i) { return weights.log_w(i); });
  const auto tr = dyadic_test(N, [&](std::size_t i) { return 2.0 * log_ratio(weights, i); });
  RegimeReport r{};
  r.log_sum_w = weights.log_W(N);
  double s = 0.0;
  for (std::size_t i = 1; i <= N; ++i) s += std::exp(2.0 * log_ratio(weights, i));
  r.sum_ratio_sq = s;
  r.block_ratio_w = tw.last_ratio;
  r.block_ratio_r2 = tr.last_ratio;
  r.sum_w_converges = tw.verdict == Verdict::kConverges;
  r.sum_r2_converges = tr.verdict == Verdict::kConverges;
  if (tw.verdict == Verdict::kConverges) {
    r.regime = Regime::kAtomic;
  } else if (tw.verdict == Verdict::kUnclear) {
    r.regime = Regime::kUndetermined;
  } else if (tr.verdict == Verdict::kConverges) {
    r.regime = Regime::kDiffuseBoundary;
  } else if (tr.verdict == Verdict::kDiverges) {
    r.regime = Regime::kSingleLeaf;
  } else {
    r.regime = Regime::kUndetermined;
  }
  return r;
}

MrcaProbability mrca_law(const WeightSequence& weights, std::size_t k, std::size_t horizon) {
  const std::size_t N = horizon == 0 ? weights.size() : horizon;
  require_weights(weights, N);
  if (k < 1 || k > N) throw RangeError("vertex label out of range");
  const auto regime = measure_regime(weights, N);
  if (regime.regime != Regime::kDiffuseBoundary) {
    throw DomainError(std::string("mrca law needs the diffuse regime, got ") +
                      to_string(regime.regime));
  }
  double log_p = 2.0 * log_ratio(weights, k);
  for (std::size_t i = k + 1; i <= N; ++i) log_p += std::log1p(-std::exp(2.0 * log_ratio(weights, i)));
  const auto tr = dyadic_test(N, [&](std::size_t i) { return 2.0 * log_ratio(weights, i); });
  const double rho = tr.last_ratio;
  const double tail = std::exp(tr.last_block_log) * rho / (1.0 - rho);
  const double p = std::exp(log_p);
  return {p, p * std::max(0.0, 1.0 - tail), tail};
}

Vertex sample_weight_measure(const WeightSequence& weights, std::size_t n, Rng& rng) {
  require_weights(weights, n);
  return draw_wrt_parent(weights, n, rng);
}

Vertex sample_mrca_pair(const WeightSequence& weights, std::size_t n, Rng& rng) {
  Vertex a = sample_weight_measure(weights, n, rng);
  Vertex b = sample_weight_measure(weights, n, rng);
  while (a != b) {
    if (a > b) {
      a = draw_wrt_parent(weights, a - 1, rng);
    } else {
      b = draw_wrt_parent(weights, b - 1, rng);
    }
  }
  return a;
}

double expected_height_sum(const WeightSequence& weights, std::size_t n) {
  require_weights(weights, n);
  double s = 0.0;
  for (std::size_t i = 2; i + 1 <= n; ++i) s += std::exp(log_ratio(weights, i));
  return s;
}

double degree_expectation(const WeightSequence& weights, std::size_t k, std::size_t n) {
  require_weights(weights, n);
  if (k < 1 || k > n) throw RangeError("vertex label out of range");
  double s = 0.0;
  for (std::size_t i = k; i + 1 <= n; ++i) s += std::exp(weights.log_w(k) - weights.log_W(i));
  return s;
}

DegreeScalingAccumulator::DegreeScalingAccumulator(double gamma, std::size_t k_max, double lp)
    : gamma_(gamma), k_max_(k_max), lp_(lp), scaled_(k_max) {
  if (!(gamma > 0.0) || gamma > 1.0) throw ParameterError("degree scaling needs gamma in (0, 1]");
  if (k_max == 0) throw ParameterError("k_max must be positive");
  if (!(lp >= 1.0)) throw ParameterError("norm exponent must be at least 1");
}

void DegreeScalingAccumulator::set_weights(const WeightSequence& weights, double C) {
  if (weights.size() < k_max_) throw RangeError("weights shorter than k_max");
  w_.resize(k_max_);
  for (std::size_t k = 1; k <= k_max_; ++k) w_[k - 1] = weights.w(k);
  C_ = C;
}

void DegreeScalingAccumulator::add(const PlaneTree& tree) {
  const auto d = degrees(tree);
  add_degrees(d);
}

void DegreeScalingAccumulator::add_degrees(std::span<const std::uint32_t> deg) {
  if (n_ == 0) n_ = deg.size();
  if (deg.size() != n_) throw ParameterError("all trees must have the same size");
  const double scale = std::pow(static_cast<double>(n_), -(1.0 - gamma_));
  for (std::size_t k = 1; k <= k_max_; ++k) {
    scaled_[k - 1].push_back(k <= deg.size() ? scale * deg[k - 1] : 0.0);
  }
  double norm = 0.0;
  std::uint32_t top = 0;
  for (auto d : deg) {
    norm += std::pow(scale * d, lp_);
    top = std::max(top, d);
  }
  norms_.push_back(std::pow(norm, 1.0 / lp_));
  if (!deg.empty() && deg[0] == top) ++first_is_max_;
}

void DegreeScalingAccumulator::merge(const DegreeScalingAccumulator& other) {
  if (other.norms_.empty()) return;
  if (n_ == 0) n_ = other.n_;
  if (other.n_ != n_ || other.k_max_ != k_max_) throw ParameterError("incompatible accumulators");
  for (std::size_t k = 0; k < k_max_; ++k) {
    scaled_[k].insert(scaled_[k].end(), other.scaled_[k].begin(), other.scaled_[k].end());
  }
  norms_.insert(norms_.end(), other.norms_.begin(), other.norms_.end());
  first_is_max_ += other.first_is_max_;
}

DegreeScalingReport DegreeScalingAccumulator::report() const {
  if (norms_.size() < 2) throw InsufficientDataError("degree scaling needs two replicates");
  DegreeScalingReport r;
  r.n = n_;
  r.replicates = norms_.size();
  r.gamma = gamma_;
  r.lp = lp_;
  for (std::size_t k = 0; k < k_max_; ++k) {
    const auto& x = scaled_[k];
    r.scaled.push_back(summarize(x));
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
    r.scaled_sq.push_back(summarize(sq));
    if (!w_.empty()) {
      const double f = w_[k] > 0.0 ? C_ * (1.0 - gamma_) / w_[k] : 1.0;
      std::vector<double> ratio(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) ratio[i] = f * x[i];
      r.ratio.push_back(summarize(ratio));
    }
  }
  r.lp_norm = summarize(norms_);
  r.max_is_first = static_cast<double>(first_is_max_) / static_cast<double>(norms_.size());
  return r;
}

DegreeScalingReport degree_scaling_report(std::span<const PlaneTree> trees,
                                          const WeightSequence* weights, double gamma,
                                          double C, std::size_t k_max) {
  DegreeScalingAccumulator acc(gamma, k_max);
  if (weights != nullptr) acc.set_weights(*weights, C);
  for (const auto& t : trees) acc.add(t);
  return acc.report();
}

}  // namespace wrtlab
