#include "euler2d/gibbs.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace euler2d {

void GibbsParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    std::ostringstream msg;
    msg << "gamma must be > 0, got " << gamma;
    throw std::invalid_argument(msg.str());
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    std::ostringstream msg;
    msg << "period must be > 0, got " << period;
    throw std::invalid_argument(msg.str());
  }
  if (cutoff.n1 < 1 || cutoff.n2 < 1) throw std::invalid_argument("cutoff must be >= (1, 1)");
}

double variance_oracle(ModeIndex k, const GibbsParams& p) {
  if (!is_positive(k)) throw std::invalid_argument("variance_oracle: mode must be positive");
  const double inv = 1.0 / wavenumber(k, p.period);  // L / (2 pi |k|)
  return (2.0 / p.gamma) * inv * inv * inv * inv;
}

SpectralField sample(const GibbsParams& p, const RngStream& stream) {
  p.validate();
  SpectralField f(p.period, p.cutoff);
  const auto modes = f.modes();
  for (std::size_t s = 0; s < f.size(); ++s) {
    f[s] = mode_gaussian(stream, modes[s]) * std::sqrt(variance_oracle(modes[s], p));
  }
  return f;
}

double log_density_ratio(const SpectralField& f, const SpectralField& g, const GibbsParams& p) {
  if (!f.compatible(g)) {
    throw std::invalid_argument("log_density_ratio: fields must share period and cutoff");
  }
  return -0.5 * p.gamma * (enstrophy(f) - enstrophy(g));
}

DyadicPair coupled_dyadic_pair(int n, int m, const GibbsParams& base, const RngStream& stream) {
  base.validate();
  if (n < 0 || n > m) {
    std::ostringstream msg;
    msg << "coupled_dyadic_pair: need 0 <= n <= m, got n = " << n << ", m = " << m;
    throw std::invalid_argument(msg.str());
  }
  if (base.period != 1.0) {
    throw std::invalid_argument("coupled_dyadic_pair: base period must be 1 (cutoff is per unit length)");
  }
  if (m > 14) throw std::invalid_argument("coupled_dyadic_pair: m too large");

  const auto level_params = [&](int level) {
    const int scale = 1 << level;
    return GibbsParams{base.gamma, static_cast<double>(scale),
                       {base.cutoff.n1 * scale, base.cutoff.n2 * scale}};
  };
  const GibbsParams fine_p = level_params(m);
  const GibbsParams coarse_p = level_params(n);

  SpectralField fine = sample(fine_p, stream);
  SpectralField coarse(coarse_p.period, coarse_p.cutoff);
  const int r = 1 << (m - n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(r));
  const auto modes = coarse.modes();
  for (std::size_t s = 0; s < coarse.size(); ++s) {
    const ModeIndex k = modes[s];
    std::complex<double> chi{};
    for (int j = 0; j < r; ++j) chi += mode_gaussian(stream, r * k + ModeIndex{j, j});
    coarse[s] = norm * chi * std::sqrt(variance_oracle(k, coarse_p));
  }
  return {std::move(coarse), std::move(fine)};
}

double field_covariance(const GibbsParams& p, Point x, Point y) {
  p.validate();
  const double q = 2.0 * std::numbers::pi / p.period;
  double sum = 0.0;
  for (const ModeIndex k : mode_box(p.cutoff)) {
    // e_k(x) conj(e_k(y)) = exp(i q k.(x - y)) / L^2.
    const double phase = q * (k.k1 * (x.x1 - y.x1) + k.k2 * (x.x2 - y.x2));
    sum += variance_oracle(k, p) * 2.0 * std::cos(phase);
  }
  return sum / (p.period * p.period);
}

}  // namespace euler2d
