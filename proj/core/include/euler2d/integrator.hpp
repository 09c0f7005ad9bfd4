#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "euler2d/drift.hpp"

namespace euler2d {

enum class Scheme { rk4, implicit_midpoint };

std::string to_string(Scheme scheme);
/// Accepts "rk4" and "implicit_midpoint"; throws std::invalid_argument otherwise.
Scheme parse_scheme(const std::string& name);

struct IntegratorConfig {
  Scheme scheme = Scheme::rk4;
  double dt = 1e-3;
  /// May be negative: the system is autonomous and time-reversible.
  double t_final = 0.0;
  double fixed_point_tol = 1e-12;
  int max_fixed_point_iters = 100;
  /// Record a snapshot every `snapshot_stride` steps; 0 keeps only the endpoints.
  int snapshot_stride = 0;

  /// Throws std::invalid_argument on dt <= 0, tol <= 0, iters < 1, stride < 0.
  void validate() const;
  /// Number of uniform steps covering |t_final| with |step| <= dt.
  [[nodiscard]] long step_count() const;
};

/// Implicit-midpoint stage equation did not converge.
class FixedPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Snapshot {
  double t;
  SpectralField field;
};

/// Snapshots are strictly monotone in time along the direction of
/// integration. Drifts are |Q(t_final) - Q(0)| / max(|Q(0)|, 1).
struct Trajectory {
  std::vector<Snapshot> samples;
  double energy_drift = 0.0;
  double enstrophy_drift = 0.0;
  int max_fixed_point_iterations = 0;
};

/// Galerkin flow of dphi/dt = B(phi) on a fixed box.
class GalerkinFlow {
 public:
  GalerkinFlow(double period, Cutoff cutoff);

  [[nodiscard]] const DriftOperator& drift_operator() const { return drift_; }

  /// One step of signed size h. Returns the number of fixed-point iterations
  /// used (0 for rk4). Throws FixedPointError on non-convergence.
  int step(SpectralField& f, double h, const IntegratorConfig& cfg) const;

  /// Final state only.
  [[nodiscard]] SpectralField advance(const SpectralField& f, const IntegratorConfig& cfg) const;

  [[nodiscard]] Trajectory evolve(const SpectralField& f, const IntegratorConfig& cfg) const;

 private:
  int step_rk4(SpectralField& f, double h) const;
  int step_midpoint(SpectralField& f, double h, const IntegratorConfig& cfg) const;

  DriftOperator drift_;
};

/// One step of size cfg.dt (signed by t_final).
SpectralField step(const SpectralField& f, const IntegratorConfig& cfg);
Trajectory evolve(const SpectralField& f, const IntegratorConfig& cfg);

}  // namespace euler2d
