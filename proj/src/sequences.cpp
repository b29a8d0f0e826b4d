#include "wrtlab/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wrtlab/errors.hpp"

namespace wrtlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_add(double x, double y) {
  if (x == -kInf) return y;
  if (y == -kInf) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

struct LineFit {
  double slope;
  double intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

FitnessSequence::FitnessSequence(std::vector<double> head, std::vector<double> period)
    : head_(std::move(head)), period_(std::move(period)) {
  if (head_.empty()) throw ParameterError("fitness head must contain a_1");
  if (period_.empty()) throw ParameterError("fitness period must be nonempty");
  if (!(head_[0] > -1.0)) throw ParameterError("fitness requires a_1 > -1");
  for (std::size_t i = 1; i < head_.size(); ++i) {
    if (!(head_[i] >= 0.0)) throw ParameterError("fitness requires a_n >= 0 for n >= 2");
  }
  for (double b : period_) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw ParameterError("fitness requires a_n >= 0 for n >= 2");
    }
  }
  head_cum_.assign(head_.size() + 1, 0.0);
  for (std::size_t i = 0; i < head_.size(); ++i) head_cum_[i + 1] = head_cum_[i] + head_[i];
  period_cum_.assign(period_.size() + 1, 0.0);
  for (std::size_t i = 0; i < period_.size(); ++i) {
    period_cum_[i + 1] = period_cum_[i] + period_[i];
  }
  period_sum_ = period_cum_.back();
}

double FitnessSequence::a(std::size_t n) const {
  if (n == 0) throw RangeError("fitness index starts at 1");
  if (n <= head_.size()) return head_[n - 1];
  return period_[(n - head_.size() - 1) % period_.size()];
}

double FitnessSequence::A(std::size_t n) const {
  if (n <= head_.size()) return head_cum_[n];
  const std::size_t m = n - head_.size();
  const std::size_t l = period_.size();
  return head_cum_.back() + static_cast<double>(m / l) * period_sum_ + period_cum_[m % l];
}

bool FitnessSequence::is_integer_periodic() const {
  if (head_.size() != 1) return false;
  return std::all_of(period_.begin(), period_.end(),
                     [](double b) { return b == std::floor(b); });
}

std::vector<double> FitnessSequence::values(std::size_t n) const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a(i + 1);
  return out;
}

FitnessSequence make_constant_fitness(double a, double b) {
  if (!(a > -1.0)) throw ParameterError("constant fitness requires a > -1");
  if (!(b >= 0.0)) throw ParameterError("constant fitness requires b >= 0");
  return FitnessSequence({a}, {b});
}

FitnessSequence make_periodic_fitness(double a, const std::vector<double>& pattern) {
  if (!(a > -1.0)) throw ParameterError("periodic fitness requires a > -1");
  if (pattern.empty()) throw ParameterError("periodic fitness requires a nonempty pattern");
  double s = 0.0;
  for (double b : pattern) s += b;
  if (!(s > 0.0)) throw ParameterError("periodic fitness pattern must have a nonzero entry");
  return FitnessSequence({a}, pattern);
}

WeightSequence WeightSequence::from_increments(const std::vector<double>& w) {
  if (w.empty()) throw ParameterError("weight sequence must be nonempty");
  if (!(w[0] > 0.0)) throw ParameterError("weights require w_1 > 0");
  WeightSequence s;
  s.w_.assign(w.size() + 1, 0.0);
  s.W_.assign(w.size() + 1, 0.0);
  for (std::size_t n = 1; n <= w.size(); ++n) {
    if (!(w[n - 1] >= 0.0)) throw ParameterError("weights require w_n >= 0");
    s.w_[n] = w[n - 1];
    s.W_[n] = s.W_[n - 1] + w[n - 1];
  }
  s.log_w_.resize(s.w_.size());
  s.log_W_.resize(s.W_.size());
  for (std::size_t n = 0; n < s.w_.size(); ++n) {
    s.log_w_[n] = std::log(s.w_[n]);
    s.log_W_[n] = std::log(s.W_[n]);
  }
  s.finish();
  return s;
}

WeightSequence WeightSequence::from_cumulative(const std::vector<double>& W) {
  if (W.empty()) throw ParameterError("weight sequence must be nonempty");
  if (!(W[0] > 0.0)) throw ParameterError("weights require w_1 > 0");
  WeightSequence s;
  s.W_.assign(W.size() + 1, 0.0);
  s.w_.assign(W.size() + 1, 0.0);
  for (std::size_t n = 1; n <= W.size(); ++n) {
    s.W_[n] = W[n - 1];
    s.w_[n] = s.W_[n] - s.W_[n - 1];
    if (!(s.w_[n] >= 0.0)) throw ParameterError("cumulative weights must be nondecreasing");
  }
  s.log_w_.resize(s.w_.size());
  s.log_W_.resize(s.W_.size());
  for (std::size_t n = 0; n < s.w_.size(); ++n) {
    s.log_w_[n] = std::log(s.w_[n]);
    s.log_W_[n] = std::log(s.W_[n]);
  }
  s.finish();
  return s;
}

WeightSequence WeightSequence::from_log_increments(const std::vector<double>& log_w) {
  std::vector<double> log_W(log_w.size());
  double acc = -kInf;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    acc = log_add(acc, log_w[i]);
    log_W[i] = acc;
  }
  return from_logs(log_w, std::move(log_W));
}

WeightSequence WeightSequence::from_logs(std::vector<double> log_w, std::vector<double> log_W,
                                         WeightOrigin origin,
                                         std::optional<std::uint64_t> seed) {
  if (log_w.empty() || log_w.size() != log_W.size()) {
    throw ParameterError("weight logs must be nonempty and of equal length");
  }
  if (!(log_w[0] > -kInf)) throw ParameterError("weights require w_1 > 0");
  WeightSequence s;
  s.log_w_.reserve(log_w.size() + 1);
  s.log_W_.reserve(log_W.size() + 1);
  s.log_w_.push_back(-kInf);
  s.log_W_.push_back(-kInf);
  s.log_w_.insert(s.log_w_.end(), log_w.begin(), log_w.end());
  s.log_W_.insert(s.log_W_.end(), log_W.begin(), log_W.end());
  s.w_.resize(s.log_w_.size());
  s.W_.resize(s.log_W_.size());
  for (std::size_t n = 0; n < s.w_.size(); ++n) {
    s.w_[n] = std::exp(s.log_w_[n]);
    s.W_[n] = std::exp(s.log_W_[n]);
  }
  s.origin_ = origin;
  s.seed_ = seed;
  s.finish();
  return s;
}

void WeightSequence::finish() {
  finite_ = std::all_of(W_.begin(), W_.end(), [](double x) { return std::isfinite(x); });
}

double WeightSequence::ratio(std::size_t n) const {
  if (log_w_[n] == -kInf) return 0.0;
  return std::exp(log_w_[n] - log_W_[n]);
}

WeightSequence WeightSequence::prefix(std::size_t n) const {
  if (n < 1 || n > size()) throw RangeError("weight prefix length out of range");
  WeightSequence s;
  s.w_.assign(w_.begin(), w_.begin() + n + 1);
  s.W_.assign(W_.begin(), W_.begin() + n + 1);
  s.log_w_.assign(log_w_.begin(), log_w_.begin() + n + 1);
  s.log_W_.assign(log_W_.begin(), log_W_.begin() + n + 1);
  s.origin_ = origin_;
  s.seed_ = seed_;
  s.finish();
  return s;
}

WeightSequence make_power_weights(double gamma, double C, std::size_t n_max) {
  if (!(gamma > 0.0)) throw ParameterError("power weights require gamma > 0");
  if (!(C > 0.0)) throw ParameterError("power weights require C > 0");
  if (n_max < 1) throw ParameterError("power weights require n_max >= 1");
  std::vector<double> W(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) W[n - 1] = C * std::pow(static_cast<double>(n), gamma);
  return WeightSequence::from_cumulative(W);
}

WeightSequence make_geometric_weights(double ratio, std::size_t n_max) {
  if (!(ratio > 0.0)) throw ParameterError("geometric weights require ratio > 0");
  if (n_max < 1) throw ParameterError("geometric weights require n_max >= 1");
  std::vector<double> log_w(n_max);
  const double lr = std::log(ratio);
  for (std::size_t n = 1; n <= n_max; ++n) log_w[n - 1] = lr * static_cast<double>(n);
  return WeightSequence::from_log_increments(log_w);
}

BetaCoupling BetaCoupling::from_values(const std::vector<double>& betas) {
  BetaCoupling c;
  c.log_beta_.reserve(betas.size());
  for (double b : betas) {
    if (!(b > 0.0) || b > 1.0) throw DomainError("coupling betas must lie in (0, 1]");
    c.log_beta_.push_back(std::log(b));
  }
  return c;
}

double BetaCoupling::log1m_beta(std::size_t k) const {
  const double lb = log_beta_[k - 1];
  return lb == 0.0 ? -kInf : std::log(-std::expm1(lb));
}

std::vector<double> BetaCoupling::betas() const {
  std::vector<double> out(log_beta_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(log_beta_[i]);
  return out;
}

void BetaCoupling::draw_until(std::size_t n_max, Rng& rng) {
  const FitnessSequence& f = *fitness_;
  for (std::size_t k = log_beta_.size() + 1; k + 1 <= n_max; ++k) {
    const double shape_a = f.A(k) + static_cast<double>(k);
    const double shape_b = f.a(k + 1);
    if (!(shape_a > 0.0)) throw DomainError("non-positive Beta shape A_k + k");
    const double lb = sample_log_beta(shape_a, shape_b, rng);
    if (lb == -kInf) throw DomainError("degenerate coupling: beta_k = 0");
    log_beta_.push_back(lb);
  }
}

BetaCoupling BetaCoupling::extended(std::size_t n_max) const {
  if (!fitness_) throw DomainError("coupling built from raw values cannot be extended");
  BetaCoupling c = *this;
  c.draw_until(n_max, c.rng_);
  return c;
}

BetaCoupling sample_beta_coupling(const FitnessSequence& fitness, std::size_t n_max, Rng& rng) {
  if (n_max < 2) throw ParameterError("beta coupling requires n_max >= 2");
  BetaCoupling c;
  c.fitness_ = fitness;
  c.log_beta_.reserve(n_max - 1);
  c.draw_until(n_max, rng);
  c.rng_ = rng;
  return c;
}

BetaCoupling sample_beta_coupling(const FitnessSequence& fitness, std::size_t n_max,
                                  std::uint64_t seed) {
  Rng rng = make_rng(seed);
  BetaCoupling c = sample_beta_coupling(fitness, n_max, rng);
  c.seed_ = seed;
  return c;
}

WeightSequence weights_from_betas(const BetaCoupling& coupling) {
  const std::size_t n = coupling.n_max();
  std::vector<double> log_w(n), log_W(n);
  log_w[0] = 0.0;
  log_W[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    log_W[k] = log_W[k - 1] - coupling.log_beta(k);
    log_w[k] = log_W[k] + coupling.log1m_beta(k);
  }
  return WeightSequence::from_logs(std::move(log_w), std::move(log_W),
                                   WeightOrigin::kBetaSampled, coupling.seed());
}

SequenceProfile estimate_profile(const WeightSequence& weights) {
  const std::size_t N = weights.size();
  if (N < 100) throw InsufficientDataError("profile estimation needs at least 100 terms");
  std::vector<double> x, y;
  for (std::size_t n = (N + 1) / 2; n <= N; ++n) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(weights.log_W(n));
  }
  const LineFit fit = least_squares(x, y);

  // Decay rate of |log W_n - log(C n^gamma)| across dyadic blocks.
  std::vector<double> bx, by;
  double all_max = 0.0;
  for (std::size_t lo = 8; 2 * lo <= N + 1; lo *= 2) {
    double m = 0.0;
    for (std::size_t n = lo; n < 2 * lo; ++n) {
      const double r = weights.log_W(n) - fit.intercept - fit.slope * std::log(double(n));
      m = std::max(m, std::abs(r));
    }
    all_max = std::max(all_max, m);
    if (m > 0.0) {
      bx.push_back(std::log(static_cast<double>(lo)));
      by.push_back(std::log(m));
    }
  }
  double eps = kInf;
  if (all_max > 1e-9 && bx.size() >= 2) eps = -least_squares(bx, by).slope;
  return {fit.slope, std::exp(fit.intercept), eps, kNaN, kNaN};
}

SequenceProfile estimate_profile(const FitnessSequence& fitness, std::size_t n) {
  if (n < 100) throw InsufficientDataError("profile estimation needs at least 100 terms");
  double s = 0.0;
  std::size_t count = 0;
  for (std::size_t i = (n + 1) / 2; i <= n; ++i, ++count) {
    s += fitness.A(i) / static_cast<double>(i);
  }
  const double c = s / static_cast<double>(count);
  const double g = c / (c + 1.0);
  return {g, kNaN, kNaN, c, g};
}

double estimate_Z(const BetaCoupling& coupling, double c, std::size_t N, double window_lo) {
  if (!(c > 0.0)) throw ParameterError("Z estimate requires c > 0");
  if (N > coupling.n_max()) throw RangeError("truncation exceeds coupling length");
  if (!(window_lo > 0.0 && window_lo < 1.0)) throw ParameterError("window_lo must be in (0,1)");
  const double g = c / (c + 1.0);
  const auto lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(window_lo * N)));
  double log_W = 0.0;
  double s = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    if (n >= 2) log_W -= coupling.log_beta(n - 1);
    if (n >= lo) s += std::exp(log_W - g * std::log(static_cast<double>(n)));
  }
  return s / static_cast<double>(N - lo + 1);
}

LimitWeights limit_weights(const BetaCoupling& coupling, double c, std::size_t N,
                           double window_lo) {
  LimitWeights out;
  out.Z_hat = estimate_Z(coupling, c, N, window_lo);
  const WeightSequence w = weights_from_betas(coupling);
  out.m.resize(N);
  const double scale = (c + 1.0) / out.Z_hat;
  for (std::size_t n = 1; n <= N; ++n) out.m[n - 1] = scale * w.w(n);
  return out;
}

}  // namespace wrtlab
