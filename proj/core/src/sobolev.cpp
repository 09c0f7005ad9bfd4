#include "euler2d/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace euler2d {

double wavenumber(ModeIndex k, double period) {
  return 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(k.norm2())) / period;
}

namespace {

double weighted_sum(const SpectralField& f, double exponent) {
  double sum = 0.0;
  const auto modes = f.modes();
  for (std::size_t s = 0; s < f.size(); ++s) {
    const double w = std::pow(wavenumber(modes[s], f.period()), exponent);
    sum += w * std::norm(f[s]);
  }
  return sum;
}

}  // namespace

double sobolev_norm(const SpectralField& f, SobolevOrder order) {
  return std::sqrt(weighted_sum(f, 2.0 * order.beta));
}

double energy(const SpectralField& f) { return weighted_sum(f, 2.0); }

double enstrophy(const SpectralField& f) { return weighted_sum(f, 4.0); }

SpectralField fractional_derivative(const SpectralField& f, double beta) {
  SpectralField out = f;
  const auto modes = f.modes();
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] *= std::pow(wavenumber(modes[s], f.period()), beta);
  }
  return out;
}

double evaluate(const SpectralField& f, Point x) {
  const double q = 2.0 * std::numbers::pi / f.period();
  const auto modes = f.modes();
  double re = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    const double phase = q * (modes[s].k1 * x.x1 + modes[s].k2 * x.x2);
    re += f[s].real() * std::cos(phase) - f[s].imag() * std::sin(phase);
  }
  return 2.0 * re / f.period();
}

std::vector<double> evaluate_grid(const SpectralField& f, const std::vector<double>& xs,
                                  const std::vector<double>& ys) {
  // Separable evaluation: exp(i q k.x) = exp(i q k1 x1) exp(i q k2 x2).
  const Cutoff c = f.cutoff();
  const double q = 2.0 * std::numbers::pi / f.period();
  const std::size_t n2w = static_cast<std::size_t>(2 * c.n2 + 1);

  std::vector<Complex> ey(ys.size() * n2w);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (int k2 = -c.n2; k2 <= c.n2; ++k2) {
      ey[j * n2w + static_cast<std::size_t>(k2 + c.n2)] = std::polar(1.0, q * k2 * ys[j]);
    }
  }

  std::vector<double> out(xs.size() * ys.size());
  std::vector<Complex> ex(static_cast<std::size_t>(c.n1 + 1));
  std::vector<Complex> partial(n2w);
  const auto& layout = f.layout();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int k1 = 0; k1 <= c.n1; ++k1) ex[static_cast<std::size_t>(k1)] = std::polar(1.0, q * k1 * xs[i]);
    std::fill(partial.begin(), partial.end(), Complex{});
    for (int k1 = 0; k1 <= c.n1; ++k1) {
      const int k2_lo = k1 == 0 ? 1 : -c.n2;
      for (int k2 = k2_lo; k2 <= c.n2; ++k2) {
        const auto s = static_cast<std::size_t>(layout.slot({k1, k2}));
        partial[static_cast<std::size_t>(k2 + c.n2)] += f[s] * ex[static_cast<std::size_t>(k1)];
      }
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
      double re = 0.0;
      const Complex* row = &ey[j * n2w];
      for (std::size_t m = 0; m < n2w; ++m) {
        re += partial[m].real() * row[m].real() - partial[m].imag() * row[m].imag();
      }
      out[i * ys.size() + j] = 2.0 * re / f.period();
    }
  }
  return out;
}

namespace {

void check_metric_config(const LocalMetricConfig& cfg) {
  if (cfg.lmax < 1) throw std::invalid_argument("local metric: lmax must be >= 1");
  if (cfg.points_per_unit < 1) {
    throw std::invalid_argument("local metric: points_per_unit must be >= 1");
  }
}

std::vector<double> window_coordinates(const LocalMetricConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(cfg.lmax) * static_cast<std::size_t>(cfg.points_per_unit);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = (static_cast<double>(i) + 0.5) / cfg.points_per_unit;
  }
  return xs;
}

// Midpoint-rule L^2 norms over the nested windows [0, l]^2.
std::vector<double> nested_window_norms(const std::vector<double>& values,
                                        const LocalMetricConfig& cfg) {
  const std::size_t ppu = static_cast<std::size_t>(cfg.points_per_unit);
  const std::size_t n = static_cast<std::size_t>(cfg.lmax) * ppu;
  std::vector<double> ring(static_cast<std::size_t>(cfg.lmax), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      ring[std::max(i, j) / ppu] += v * v;
    }
  }
  const double cell = 1.0 / static_cast<double>(ppu * ppu);
  std::vector<double> norms(ring.size());
  double cumulative = 0.0;
  for (std::size_t l = 0; l < ring.size(); ++l) {
    cumulative += ring[l];
    norms[l] = std::sqrt(cumulative * cell);
  }
  return norms;
}

}  // namespace

std::vector<double> windowed_norms(const SpectralField& f, SobolevOrder order,
                                   const LocalMetricConfig& cfg) {
  check_metric_config(cfg);
  const auto xs = window_coordinates(cfg);
  return nested_window_norms(evaluate_grid(fractional_derivative(f, order.beta), xs, xs), cfg);
}

double combine_windowed(const std::vector<double>& x) {
  double d = 0.0;
  double w = 1.0;
  for (double xl : x) {
    w *= 0.5;
    d += w * xl / (1.0 + xl);
  }
  return d;
}

double local_distance(const SpectralField& f, const SpectralField& g, SobolevOrder order,
                      const LocalMetricConfig& cfg) {
  if (!f.compatible(g)) {
    std::ostringstream msg;
    msg << "local_distance: fields must share period and cutoff (periods " << f.period()
        << " and " << g.period() << ")";
    throw std::invalid_argument(msg.str());
  }
  return combine_windowed(windowed_norms(f - g, order, cfg));
}

double local_distance_mixed(const SpectralField& f, const SpectralField& g, SobolevOrder order,
                            const LocalMetricConfig& cfg) {
  check_metric_config(cfg);
  const auto xs = window_coordinates(cfg);
  auto vf = evaluate_grid(fractional_derivative(f, order.beta), xs, xs);
  const auto vg = evaluate_grid(fractional_derivative(g, order.beta), xs, xs);
  for (std::size_t i = 0; i < vf.size(); ++i) vf[i] -= vg[i];
  return combine_windowed(nested_window_norms(vf, cfg));
}

}  // namespace euler2d
