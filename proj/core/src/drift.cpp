#include "euler2d/drift.hpp"

#include <fftw3.h>

#include <array>

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "euler2d/sobolev.hpp"

namespace euler2d {

double alpha(ModeIndex h, ModeIndex k, double period) {
  if (k.is_zero() || h.is_zero()) {
    throw std::invalid_argument("alpha: h and k must be nonzero");
  }
  // The bracket equals (h_perp.k)(2 k.h - k^2) / (2 k^2); the integer
  // numerator avoids cancellation when 2 k.h is close to k^2.
  const double q = 2.0 * std::numbers::pi / period;
  const std::int64_t num = dot(h.perp(), k) * (2 * dot(k, h) - k.norm2());
  return (q * q / period) * (static_cast<double>(num) / (2.0 * static_cast<double>(k.norm2())));
}

DriftOperator::DriftOperator(double period, Cutoff cutoff)
    : period_(period), layout_(std::make_shared<const ModeLayout>(cutoff)) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("DriftOperator: period must be positive and finite");
  }
  const double scale = std::pow(2.0 * std::numbers::pi / period, 2) / period;
  const auto& layout = *layout_;
  offsets_.reserve(layout.size() + 1);
  offsets_.push_back(0);
  for (const ModeIndex k : layout.modes()) {
    const std::int64_t k2 = k.norm2();
    for (int h1 = -cutoff.n1; h1 <= cutoff.n1; ++h1) {
      for (int h2 = -cutoff.n2; h2 <= cutoff.n2; ++h2) {
        const ModeIndex h{h1, h2};
        const ModeIndex p = k - h;
        if (h.is_zero() || p.is_zero() || !cutoff.contains(p)) continue;
        const std::size_t a = layout.closure_index(h);
        const std::size_t b = layout.closure_index(p);
        // Each unordered pair once; the (h, p) and (p, h) orderings carry equal kernels.
        if (a >= b) continue;
        const std::int64_t num = dot(h.perp(), k) * (k2 - 2 * dot(k, h));
        if (num == 0) continue;
        terms_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                          scale * static_cast<double>(num) / static_cast<double>(k2)});
      }
    }
    offsets_.push_back(static_cast<std::uint32_t>(terms_.size()));
  }
}

void DriftOperator::check(const SpectralField& f) const {
  if (f.period() != period_ || f.cutoff() != cutoff()) {
    throw std::invalid_argument("DriftOperator: field period/cutoff does not match the operator");
  }
}

void DriftOperator::apply(const SpectralField& f, SpectralField& out) const {
  check(f);
  check(out);
  const auto& layout = *layout_;
  std::vector<Complex> ext(layout.closure_size());
  const auto modes = layout.modes();
  for (std::size_t s = 0; s < layout.size(); ++s) {
    ext[layout.closure_index(modes[s])] = f[s];
    ext[layout.closure_index(-modes[s])] = std::conj(f[s]);
  }
  for (std::size_t s = 0; s < layout.size(); ++s) {
    double re = 0.0;
    double im = 0.0;
    for (std::uint32_t t = offsets_[s]; t < offsets_[s + 1]; ++t) {
      const Term& term = terms_[t];
      const Complex u = ext[term.a];
      const Complex v = ext[term.b];
      re += term.coef * (u.real() * v.real() - u.imag() * v.imag());
      im += term.coef * (u.real() * v.imag() + u.imag() * v.real());
    }
    out[s] = {re, im};
  }
}

SpectralField DriftOperator::operator()(const SpectralField& f) const {
  SpectralField out(period_, layout_);
  apply(f, out);
  return out;
}

void DriftOperator::write_triads_csv(const SpectralField& f, std::ostream& os) const {
  check(f);
  const auto& layout = *layout_;
  const Cutoff c = cutoff();
  const auto closure_mode = [&](std::uint32_t idx) {
    const int w = 2 * c.n2 + 1;
    return ModeIndex{static_cast<int>(idx) / w - c.n1, static_cast<int>(idx) % w - c.n2};
  };
  os << "k1,k2,h1,h2,alpha,contribution_re,contribution_im\n";
  const auto prec = os.precision(17);
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const ModeIndex k = layout.mode(s);
    for (std::uint32_t t = offsets_[s]; t < offsets_[s + 1]; ++t) {
      const ModeIndex h = closure_mode(terms_[t].a);
      const ModeIndex p = closure_mode(terms_[t].b);
      const Complex contrib = terms_[t].coef * f.coefficient(h) * f.coefficient(p);
      os << k.k1 << ',' << k.k2 << ',' << h.k1 << ',' << h.k2 << ',' << alpha(h, k, period_)
         << ',' << contrib.real() << ',' << contrib.imag() << '\n';
    }
  }
  os.precision(prec);
}

DriftResult drift(const SpectralField& f) {
  const DriftOperator op(f.period(), f.cutoff());
  return {op(f), DriftMethod::triad_sum};
}

namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer fftw_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

// FFTW planning is not thread-safe.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwPlan {
  fftw_plan plan = nullptr;
  FftwPlan(int n, fftw_complex* in, fftw_complex* out, int sign) {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_2d(n, n, in, out, sign, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("drift_pseudospectral: FFTW planning failed");
  }
  ~FftwPlan() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;
};

}  // namespace

DriftResult drift_pseudospectral(const SpectralField& f, int grid) {
  const Cutoff c = f.cutoff();
  if (grid < 4 * c.max_component()) {
    std::ostringstream msg;
    msg << "drift_pseudospectral: grid " << grid << " below 4 x max cutoff ("
        << 4 * c.max_component() << ")";
    throw std::invalid_argument(msg.str());
  }
  const double period = f.period();
  const double q = 2.0 * std::numbers::pi / period;
  const std::size_t n = static_cast<std::size_t>(grid);
  const std::size_t total = n * n;
  const auto wrap = [grid](int m) { return static_cast<std::size_t>(((m % grid) + grid) % grid); };

  // Spectral coefficients of -d2 phi, d1 phi, d1 Lap phi, d2 Lap phi.
  std::array<FftwBuffer, 4> bufs{fftw_buffer(total), fftw_buffer(total), fftw_buffer(total),
                                 fftw_buffer(total)};
  for (auto& b : bufs) {
    for (std::size_t i = 0; i < total; ++i) b[i][0] = b[i][1] = 0.0;
  }
  for (int m1 = -c.n1; m1 <= c.n1; ++m1) {
    for (int m2 = -c.n2; m2 <= c.n2; ++m2) {
      const ModeIndex m{m1, m2};
      const Complex cm = f.coefficient(m);
      if (cm == Complex{}) continue;
      const Complex i_unit{0.0, 1.0};
      const double lap = -q * q * static_cast<double>(m.norm2());
      const std::array<Complex, 4> spec{-i_unit * q * double(m2) * cm, i_unit * q * double(m1) * cm,
                                        i_unit * q * double(m1) * lap * cm,
                                        i_unit * q * double(m2) * lap * cm};
      const std::size_t idx = wrap(m1) * n + wrap(m2);
      for (std::size_t v = 0; v < 4; ++v) {
        bufs[v][idx][0] = spec[v].real();
        bufs[v][idx][1] = spec[v].imag();
      }
    }
  }

  auto work = fftw_buffer(total);
  const FftwPlan backward(grid, bufs[0].get(), work.get(), FFTW_BACKWARD);
  const FftwPlan forward(grid, work.get(), bufs[0].get(), FFTW_FORWARD);
  std::array<FftwBuffer, 4> phys{fftw_buffer(total), fftw_buffer(total), fftw_buffer(total),
                                 fftw_buffer(total)};
  for (std::size_t v = 0; v < 4; ++v) fftw_execute_dft(backward.plan, bufs[v].get(), phys[v].get());

  // Grid values carry the 1/L of e_k; the product therefore carries 1/L^2.
  const double inv_l2 = 1.0 / (period * period);
  for (std::size_t i = 0; i < total; ++i) {
    const double u1 = phys[0][i][0];
    const double u2 = phys[1][i][0];
    const double w1 = phys[2][i][0];
    const double w2 = phys[3][i][0];
    work[i][0] = -(u1 * w1 + u2 * w2) * inv_l2;
    work[i][1] = 0.0;
  }
  fftw_execute_dft(forward.plan, work.get(), bufs[0].get());

  // <g, e_k> = (L / M^2) * DFT(g)[k].
  const double proj = period / static_cast<double>(total);
  SpectralField out(period, f.layout_ptr());
  const auto modes = f.modes();
  for (std::size_t s = 0; s < out.size(); ++s) {
    const ModeIndex k = modes[s];
    const std::size_t idx = wrap(k.k1) * n + wrap(k.k2);
    const Complex rk{bufs[0][idx][0] * proj, bufs[0][idx][1] * proj};
    out[s] = rk / (-q * q * static_cast<double>(k.norm2()));
  }
  return {std::move(out), DriftMethod::pseudo_spectral};
}

double quadratic_derivative(const SpectralField& f, Functional functional) {
  const SpectralField b = drift(f).field;
  const double exponent = functional == Functional::energy ? 2.0 : 4.0;
  const auto modes = f.modes();
  double sum = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    const double w = std::pow(wavenumber(modes[s], f.period()), exponent);
    sum += w * (std::conj(f[s]) * b[s]).real();
  }
  return 2.0 * sum;
}

JacobianEstimate jacobian_trace_estimate(const SpectralField& f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("jacobian_trace_estimate: eps must be > 0");
  const DriftOperator op(f.period(), f.cutoff());
  JacobianEstimate est;
  SpectralField plus = f;
  SpectralField minus = f;
  SpectralField b_plus(f.period(), op.layout_ptr());
  SpectralField b_minus(f.period(), op.layout_ptr());
  double frob2 = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    for (int part = 0; part < 2; ++part) {
      const Complex dir = part == 0 ? Complex{eps, 0.0} : Complex{0.0, eps};
      plus[s] = f[s] + dir;
      minus[s] = f[s] - dir;
      op.apply(plus, b_plus);
      op.apply(minus, b_minus);
      plus[s] = f[s];
      minus[s] = f[s];
      for (std::size_t r = 0; r < f.size(); ++r) {
        const Complex col = (b_plus[r] - b_minus[r]) / (2.0 * eps);
        frob2 += std::norm(col);
        if (r == s) est.trace += part == 0 ? col.real() : col.imag();
      }
    }
  }
  est.frobenius = std::sqrt(frob2);
  return est;
}

}  // namespace euler2d
