#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace euler2d {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test. The p-value uses the asymptotic
/// Kolmogorov distribution at lambda = (sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) D
/// with ne = n m / (n + m). Throws std::invalid_argument on empty input.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

/// P(K > lambda) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_survival(double lambda);

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double std_error = 0.0;
};

/// Summation in index order (two-pass), so results depend only on the data.
SummaryStats summarize(std::span<const double> xs);

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t bins = 0;
};

/// Pearson chi-square test of p-values against Uniform(0, 1) on `bins`
/// equal-width bins (bins - 1 degrees of freedom).
ChiSquareResult chi_square_uniform(std::span<const double> pvalues, std::size_t bins = 10);

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> xs, double q);

}  // namespace euler2d
