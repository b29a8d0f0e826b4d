#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wrtlab {

struct Summary {
  std::size_t count;
  double mean;
  double variance;  // unbiased
  double se;        // standard error of the mean
};

Summary summarize(std::span<const double> xs);

// Survival function of the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

struct KsResult {
  double statistic;
  double p_value;
};

// One-sample Kolmogorov-Smirnov test against a continuous CDF.
KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic;
  double dof;
  double p_value;
};

// Goodness of fit of observed counts to cell probabilities. Cells with
// probability 0 must have count 0 and are dropped.
ChiSquareResult chi_square_test(std::span<const double> counts, std::span<const double> probs);

// Homogeneity of two count vectors over the same ordered cells. Adjacent
// cells are pooled until each bin holds at least min_cell observations.
ChiSquareResult chi_square_two_sample(std::span<const double> a, std::span<const double> b,
                                      double min_cell = 20.0);

double normal_cdf(double x);

// Sample Pearson correlation.
double correlation(std::span<const double> x, std::span<const double> y);

}  // namespace wrtlab
