#include "euler2d/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "euler2d/sobolev.hpp"

namespace euler2d {

std::string to_string(Scheme scheme) {
  return scheme == Scheme::rk4 ? "rk4" : "implicit_midpoint";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "implicit_midpoint") return Scheme::implicit_midpoint;
  throw std::invalid_argument("unknown integration scheme '" + name + "'");
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("integrator: dt must be > 0");
  if (!std::isfinite(t_final)) throw std::invalid_argument("integrator: t_final must be finite");
  if (!(fixed_point_tol > 0.0)) {
    throw std::invalid_argument("integrator: fixed_point_tol must be > 0");
  }
  if (max_fixed_point_iters < 1) {
    throw std::invalid_argument("integrator: max_fixed_point_iters must be >= 1");
  }
  if (snapshot_stride < 0) throw std::invalid_argument("integrator: snapshot_stride must be >= 0");
}

long IntegratorConfig::step_count() const {
  const double ratio = std::abs(t_final) / dt;
  // Tolerate representation error in t_final / dt.
  return static_cast<long>(std::ceil(ratio * (1.0 - 1e-12)));
}

GalerkinFlow::GalerkinFlow(double period, Cutoff cutoff) : drift_(period, cutoff) {}

int GalerkinFlow::step(SpectralField& f, double h, const IntegratorConfig& cfg) const {
  return cfg.scheme == Scheme::rk4 ? step_rk4(f, h) : step_midpoint(f, h, cfg);
}

int GalerkinFlow::step_rk4(SpectralField& f, double h) const {
  const auto& layout = drift_.layout_ptr();
  SpectralField k1(f.period(), layout), k2(f.period(), layout), k3(f.period(), layout),
      k4(f.period(), layout), stage(f.period(), layout);
  const std::size_t n = f.size();
  drift_.apply(f, k1);
  for (std::size_t i = 0; i < n; ++i) stage[i] = f[i] + 0.5 * h * k1[i];
  drift_.apply(stage, k2);
  for (std::size_t i = 0; i < n; ++i) stage[i] = f[i] + 0.5 * h * k2[i];
  drift_.apply(stage, k3);
  for (std::size_t i = 0; i < n; ++i) stage[i] = f[i] + h * k3[i];
  drift_.apply(stage, k4);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return 0;
}

int GalerkinFlow::step_midpoint(SpectralField& f, double h, const IntegratorConfig& cfg) const {
  // Solve m = f + (h/2) B(m); the new state is 2m - f.
  const auto& layout = drift_.layout_ptr();
  SpectralField mid = f;
  SpectralField b(f.period(), layout);
  const std::size_t n = f.size();
  for (int it = 1; it <= cfg.max_fixed_point_iters; ++it) {
    drift_.apply(mid, b);
    double change = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex next = f[i] + 0.5 * h * b[i];
      change = std::max(change, std::abs(next - mid[i]));
      scale = std::max(scale, std::abs(next));
      mid[i] = next;
    }
    if (!std::isfinite(change)) break;
    if (change <= cfg.fixed_point_tol * scale) {
      for (std::size_t i = 0; i < n; ++i) f[i] = 2.0 * mid[i] - f[i];
      return it;
    }
  }
  std::ostringstream msg;
  msg << "implicit midpoint: fixed-point iteration did not reach tol " << cfg.fixed_point_tol
      << " within " << cfg.max_fixed_point_iters << " iterations (h = " << h << ")";
  throw FixedPointError(msg.str());
}

SpectralField GalerkinFlow::advance(const SpectralField& f, const IntegratorConfig& cfg) const {
  cfg.validate();
  const long steps = cfg.step_count();
  SpectralField state = f;
  if (steps == 0) return state;
  const double h = cfg.t_final / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) step(state, h, cfg);
  return state;
}

namespace {

double relative_drift(double q0, double q1) {
  return std::abs(q1 - q0) / std::max(std::abs(q0), 1.0);
}

}  // namespace

Trajectory GalerkinFlow::evolve(const SpectralField& f, const IntegratorConfig& cfg) const {
  cfg.validate();
  const long steps = cfg.step_count();
  Trajectory traj;
  traj.samples.push_back({0.0, f});
  if (steps > 0) {
    const double h = cfg.t_final / static_cast<double>(steps);
    SpectralField state = f;
    for (long s = 1; s <= steps; ++s) {
      traj.max_fixed_point_iterations =
          std::max(traj.max_fixed_point_iterations, step(state, h, cfg));
      const bool last = s == steps;
      if (last || (cfg.snapshot_stride > 0 && s % cfg.snapshot_stride == 0)) {
        traj.samples.push_back({last ? cfg.t_final : h * static_cast<double>(s), state});
      }
    }
  }
  const SpectralField& end = traj.samples.back().field;
  traj.energy_drift = relative_drift(energy(f), energy(end));
  traj.enstrophy_drift = relative_drift(enstrophy(f), enstrophy(end));
  return traj;
}

SpectralField step(const SpectralField& f, const IntegratorConfig& cfg) {
  cfg.validate();
  const GalerkinFlow flow(f.period(), f.cutoff());
  SpectralField out = f;
  flow.step(out, cfg.t_final < 0.0 ? -cfg.dt : cfg.dt, cfg);
  return out;
}

Trajectory evolve(const SpectralField& f, const IntegratorConfig& cfg) {
  const GalerkinFlow flow(f.period(), f.cutoff());
  return flow.evolve(f, cfg);
}

}  // namespace euler2d
