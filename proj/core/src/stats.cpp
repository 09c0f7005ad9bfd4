#include "euler2d/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace euler2d {

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // The alternating series is useless near 0; there the survival is 1 to
  // double precision anyway.
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = n * m / (n + m);
  const double sq = std::sqrt(ne);
  return {d, kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d)};
}

SummaryStats summarize(std::span<const double> xs) {
  SummaryStats s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double v : xs) sum += v;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double v : xs) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(xs.size() - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(xs.size()));
  }
  return s;
}

ChiSquareResult chi_square_uniform(std::span<const double> pvalues, std::size_t bins) {
  if (bins < 2) throw std::invalid_argument("chi_square_uniform: need at least 2 bins");
  if (pvalues.empty()) throw std::invalid_argument("chi_square_uniform: no p-values");
  std::vector<double> counts(bins, 0.0);
  for (double p : pvalues) {
    const auto b = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, p) * bins));
    counts[b] += 1.0;
  }
  const double expected = static_cast<double>(pvalues.size()) / static_cast<double>(bins);
  ChiSquareResult r;
  r.bins = bins;
  for (double c : counts) r.statistic += (c - expected) * (c - expected) / expected;
  r.p_value = boost::math::gamma_q(0.5 * static_cast<double>(bins - 1), 0.5 * r.statistic);
  return r;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

}  // namespace euler2d
