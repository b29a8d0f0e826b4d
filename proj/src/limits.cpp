#include "wrtlab/limits.hpp"

#include <algorithm>
#include <cmath>

#include "wrtlab/errors.hpp"

namespace wrtlab {

namespace {

void check_beta_shapes(double a, double b) {
  if (!(a > 0.0)) throw ParameterError("Beta moment requires a > 0");
  if (!(b >= 0.0)) throw ParameterError("Beta moment requires b >= 0");
}

std::vector<double> prefix_sums(const std::vector<double>& pattern) {
  std::vector<double> B(pattern.size() + 1, 0.0);
  for (std::size_t i = 0; i < pattern.size(); ++i) B[i + 1] = B[i] + pattern[i];
  return B;
}

void check_integer_pattern(const std::vector<double>& pattern) {
  if (pattern.empty()) throw ParameterError("pattern must be nonempty");
  double s = 0.0;
  for (double b : pattern) {
    if (!(b >= 0.0) || b != std::floor(b)) {
      throw ParameterError("pattern entries must be nonnegative integers");
    }
    s += b;
  }
  if (!(s > 0.0)) throw ParameterError("pattern must have a nonzero entry");
}

double log_beta_moment(double a, double b, unsigned p) {
  return std::log(beta_moment(a, b, p));
}

}  // namespace

double beta_moment(double a, double b, unsigned q) {
  check_beta_shapes(a, b);
  if (b == 0.0 || q == 0) return 1.0;
  if (q <= 1000) {
    double r = 1.0;
    for (unsigned k = 0; k < q; ++k) r *= (a + k) / (a + b + k);
    return r;
  }
  return std::exp(std::lgamma(a + q) - std::lgamma(a) + std::lgamma(a + b) -
                  std::lgamma(a + b + q));
}

double beta_mixed_moment(double a, double b, unsigned p, unsigned q) {
  check_beta_shapes(a, b);
  if (b == 0.0) return q == 0 ? 1.0 : 0.0;
  if (p + q <= 1000) {
    double r = 1.0;
    for (unsigned i = 0; i < p; ++i) r *= (a + i) / (a + b + i);
    for (unsigned j = 0; j < q; ++j) r *= (b + j) / (a + b + p + j);
    return r;
  }
  return std::exp(std::lgamma(a + p) + std::lgamma(b + q) + std::lgamma(a + b) -
                  std::lgamma(a) - std::lgamma(b) - std::lgamma(a + b + p + q));
}

double ml_moment(double alpha, double theta, double p) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("ML moment requires 0 < alpha < 1");
  if (!(theta > -alpha)) throw ParameterError("ML moment requires theta > -alpha");
  if (!(p >= 0.0)) throw ParameterError("ML moment requires p >= 0");
  const double t = theta / alpha;
  return std::exp(std::lgamma(theta + 1.0) + std::lgamma(t + p + 1.0) - std::lgamma(t + 1.0) -
                  std::lgamma(theta + p * alpha + 1.0));
}

std::string to_string(ChainForm form) {
  switch (form) {
    case ChainForm::kMlmc:
      return "mlmc";
    case ChainForm::kIpggp:
      return "ipggp";
    case ChainForm::kGeneric:
      return "generic";
  }
  return "generic";
}

LimitChainSpec LimitChainSpec::from_fitness(const FitnessSequence& fitness) {
  if (fitness.is_constant()) {
    const double b = fitness.period()[0];
    if (!(b > 0.0)) throw DomainError("limit chain requires c > 0");
    const double a = fitness.a(1);
    return {fitness, b, ChainForm::kMlmc, 1.0 / (b + 1.0), a / (b + 1.0)};
  }
  const double c = fitness.period_mean();
  if (!(c > 0.0)) throw DomainError("limit chain requires c > 0");
  if (fitness.is_integer_periodic()) return {fitness, c, ChainForm::kIpggp};
  return {fitness, c, ChainForm::kGeneric};
}

LimitChainSpec LimitChainSpec::generic(const FitnessSequence& fitness, double c) {
  if (!(c > 0.0)) throw ParameterError("limit chain requires c > 0");
  return {fitness, c, ChainForm::kGeneric};
}

double cp_constant(double a, double b, unsigned p) {
  if (!(a > -1.0)) throw ParameterError("C_p requires a > -1");
  if (!(b >= 0.0)) throw ParameterError("C_p requires b >= 0");
  const double s = b + 1.0;
  return std::exp(-static_cast<double>(p) * std::log(s) + std::lgamma(1.0 + a + p) +
                  std::lgamma(1.0 + a / s) - std::lgamma(1.0 + a) -
                  std::lgamma(1.0 + (a + p) / s));
}

std::vector<unsigned> ipggp_index_set(const std::vector<double>& pattern) {
  check_integer_pattern(pattern);
  const auto l = static_cast<unsigned>(pattern.size());
  const std::vector<double> B = prefix_sums(pattern);
  const auto S = static_cast<unsigned>(B.back());
  std::vector<unsigned> out;
  for (unsigned i = 1; i + 1 <= S + l; ++i) {
    bool removed = false;
    for (unsigned r = 1; r + 1 <= l; ++r) {
      if (i == static_cast<unsigned>(B[r]) + r) removed = true;
    }
    if (!removed) out.push_back(i);
  }
  return out;
}

double cp_periodic(double a, const std::vector<double>& pattern, unsigned p) {
  if (!(a > -1.0)) throw ParameterError("C_p requires a > -1");
  const std::vector<unsigned> set = ipggp_index_set(pattern);
  const double l = static_cast<double>(pattern.size());
  const double S = prefix_sums(pattern).back();
  const double r = l + S;
  double log_c = static_cast<double>(p) * S / r * std::log(l);
  for (unsigned i : set) log_c += std::lgamma((a + i + p) / r) - std::lgamma((a + i) / r);
  return std::exp(log_c);
}

ChainMoment cp_generic(const FitnessSequence& fitness, double c, unsigned p, std::size_t N) {
  if (!(c > 0.0)) throw ParameterError("C_p requires c > 0");
  if (N < 16) throw ParameterError("C_p extrapolation requires N >= 16");
  const double expo = static_cast<double>(p) - static_cast<double>(p) / (c + 1.0);
  const std::size_t marks[3] = {N / 4, N / 2, N};
  double x[3];
  double log_prod = 0.0;
  std::size_t next = 0;
  for (std::size_t n = 1; next < 3; ++n) {
    if (n == marks[next]) {
      x[next++] = std::exp(expo * std::log(static_cast<double>(n)) + log_prod);
    }
    log_prod += log_beta_moment(fitness.A(n) + static_cast<double>(n), fitness.a(n + 1), p);
  }
  const double e1 = x[1] - x[0];
  const double e2 = x[2] - x[1];
  double value = x[2];
  if (e1 != 0.0 && e2 != 0.0) {
    const double rho = e2 / e1;
    if (rho > -1.0 && rho < 1.0) value = x[2] + e2 * rho / (1.0 - rho);
  }
  const bool flagged = std::abs(value - x[2]) > 0.01 * std::abs(x[2]);
  return {value, flagged};
}

ChainMoment limit_chain_moment(const LimitChainSpec& spec, std::size_t k, unsigned p,
                               std::size_t N) {
  if (k < 1) throw RangeError("limit chain index starts at 1");
  if (p == 0) return {1.0, false};
  const FitnessSequence& f = spec.fitness;
  ChainMoment cp{0.0, false};
  switch (spec.form) {
    case ChainForm::kMlmc:
      cp.value = cp_constant(f.a(1), f.period()[0], p);
      break;
    case ChainForm::kIpggp:
      cp.value = cp_periodic(f.a(1), f.period(), p);
      break;
    case ChainForm::kGeneric:
      cp = cp_generic(f, spec.c, p, N);
      break;
  }
  double log_den = 0.0;
  for (std::size_t i = 1; i < k; ++i) {
    log_den += log_beta_moment(f.A(i) + static_cast<double>(i), f.a(i + 1), p);
  }
  const double v = std::exp(static_cast<double>(p) * std::log(spec.c + 1.0) + std::log(cp.value) -
                            log_den);
  return {v, cp.flagged};
}

ChainSample sample_mlmc(double alpha, double theta, std::size_t k_max, std::size_t N, Rng& rng) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("MLMC requires 0 < alpha < 1");
  if (!(theta > -alpha)) throw ParameterError("MLMC requires theta > -alpha");
  if (k_max < 1) throw ParameterError("MLMC requires k_max >= 1");
  N = std::max(N, k_max);
  const double b = 1.0 / alpha - 1.0;
  const double a = theta / alpha;
  const FitnessSequence fitness = make_constant_fitness(a, b);
  const BetaCoupling coupling = sample_beta_coupling(fitness, N, rng);

  double log_x = 0.0;
  for (std::size_t i = 1; i < N; ++i) {
    const double shape = fitness.A(i) + static_cast<double>(i);
    log_x += coupling.log_beta(i) - std::log(shape / (shape + b));
  }
  ChainSample out;
  out.truncation_warning = N < 10000;
  out.M.resize(k_max);
  out.M[0] = (b + 1.0) * cp_constant(a, b, 1) * std::exp(log_x);
  out.Z_hat = (b + 1.0) / out.M[0];
  for (std::size_t k = 1; k < k_max; ++k) out.M[k] = out.M[k - 1] / coupling.beta(k);
  out.beta.resize(k_max - 1);
  for (std::size_t k = 1; k < k_max; ++k) out.beta[k - 1] = coupling.beta(k);
  return out;
}

ChainSample sample_limit_chain(const FitnessSequence& fitness, double c, std::size_t k_max,
                               std::size_t N, Rng& rng) {
  if (k_max < 1) throw ParameterError("limit chain requires k_max >= 1");
  const BetaCoupling coupling = sample_beta_coupling(fitness, std::max(N, k_max), rng);
  ChainSample out;
  out.Z_hat = estimate_Z(coupling, c, N);
  out.truncation_warning = N < 10000;
  out.M.resize(k_max);
  double log_W = 0.0;
  for (std::size_t k = 1; k < k_max; ++k) log_W -= coupling.log_beta(k);
  out.M[k_max - 1] = (c + 1.0) / out.Z_hat * std::exp(log_W);
  for (std::size_t k = k_max - 1; k >= 1; --k) out.M[k - 1] = coupling.beta(k) * out.M[k];
  out.beta.resize(k_max - 1);
  for (std::size_t k = 1; k < k_max; ++k) out.beta[k - 1] = coupling.beta(k);
  return out;
}

std::vector<double> sample_ggp(double z, double r, std::size_t k_max, Rng& rng) {
  if (!(z > 0.0) || !(r > 0.0)) throw ParameterError("GGP requires z > 0 and r > 0");
  std::vector<double> g(k_max);
  std::exponential_distribution<double> exp1(1.0);
  double s = 0.0;
  for (std::size_t k = 0; k < k_max; ++k) {
    s += k == 0 ? sample_gamma(z / r, rng) : exp1(rng);
    g[k] = std::pow(s, 1.0 / r);
  }
  return g;
}

std::vector<double> sample_ipggp(double a, const std::vector<double>& pattern, std::size_t k_max,
                                 Rng& rng) {
  if (!(a > -1.0)) throw ParameterError("IPGGP requires a > -1");
  const std::vector<unsigned> set = ipggp_index_set(pattern);
  if (set.empty()) throw DomainError("IPGGP index set is empty");
  const std::size_t l = pattern.size();
  const std::vector<double> B = prefix_sums(pattern);
  const double r = static_cast<double>(l) + B.back();
  const std::size_t blocks = (k_max + l - 1) / l + 1;

  std::vector<std::vector<double>> comp;
  comp.reserve(set.size());
  for (unsigned q : set) comp.push_back(sample_ggp(a + q, r, blocks, rng));

  std::vector<double> g(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const std::size_t n = (k - 1) / l + 1;
    const std::size_t rr = (k - 1) % l + 1;
    const double split = static_cast<double>(rr) - 1.0 + B[rr - 1];
    double prod = 1.0;
    for (std::size_t j = 0; j < set.size(); ++j) {
      prod *= set[j] <= split ? comp[j][n] : comp[j][n - 1];
    }
    g[k - 1] = prod;
  }
  return g;
}

double ipggp_scale(const std::vector<double>& pattern) {
  check_integer_pattern(pattern);
  const double l = static_cast<double>(pattern.size());
  const double S = prefix_sums(pattern).back();
  return (S + l) * std::pow(l, -l / (S + l));
}

}  // namespace wrtlab
