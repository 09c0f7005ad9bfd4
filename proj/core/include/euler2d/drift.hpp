#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "euler2d/spectral_field.hpp"

namespace euler2d {

/// Triad coefficient in its closed form
///
///   alpha_{h,k} = (1/L) (2 pi / L)^2 [ (h_perp.k)(k.h)/k^2 - (h_perp.k)/2 ].
///
/// Zero whenever h is parallel to k. Throws std::invalid_argument for h = 0
/// or k = 0.
///
/// Summed over the full lattice with phi_{-m} = conj(phi_m), the Euler drift
/// obtained from dt(Lap phi) = -(grad_perp phi . grad) Lap phi is
/// B_k = -sum_h alpha_{h,k} phi_h phi_{k-h}; the sign is fixed by the
/// pseudo-spectral evaluation in drift_pseudospectral().
double alpha(ModeIndex h, ModeIndex k, double period);

enum class DriftMethod { triad_sum, pseudo_spectral };

struct DriftResult {
  SpectralField field;
  DriftMethod method;
};

/// Precomputed Galerkin drift for a fixed period and cutoff.
///
/// For each positive mode k of the box the operator stores every unordered
/// pair {h, k - h} of nonzero modes of the box closure with a nonvanishing
/// symmetrized kernel
///
///   c(h, k) = (2 pi / L)^2 / L * (h_perp.k) (k^2 - 2 k.h) / k^2,
///
/// which equals -2 alpha_{h,k} for h != k - h. The integer numerator makes
/// kernels of parallel or equal-norm triads exactly zero, so single modes and
/// single shells are exact steady states. Evaluation is a fixed-order sum per
/// output mode and therefore bitwise deterministic.
class DriftOperator {
 public:
  DriftOperator(double period, Cutoff cutoff);

  [[nodiscard]] double period() const { return period_; }
  [[nodiscard]] Cutoff cutoff() const { return layout_->cutoff(); }
  [[nodiscard]] const std::shared_ptr<const ModeLayout>& layout_ptr() const { return layout_; }
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }

  /// out <- B(f). `out` must be compatible with the operator.
  void apply(const SpectralField& f, SpectralField& out) const;
  [[nodiscard]] SpectralField operator()(const SpectralField& f) const;

  /// Per-triad contributions as CSV: k1,k2,h1,h2,alpha,contribution_re,contribution_im.
  void write_triads_csv(const SpectralField& f, std::ostream& os) const;

 private:
  struct Term {
    std::uint32_t a;  // closure index of h
    std::uint32_t b;  // closure index of k - h
    double coef;
  };

  void check(const SpectralField& f) const;

  double period_;
  std::shared_ptr<const ModeLayout> layout_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Term> terms_;
};

/// Triad-sum drift of f.
DriftResult drift(const SpectralField& f);

/// Pseudo-spectral evaluation: grad_perp phi and grad Lap phi on a uniform
/// grid x grid mesh, pointwise product, transform back, project onto the box
/// and invert the Laplacian. Throws std::invalid_argument unless
/// grid >= 4 * max cutoff component.
DriftResult drift_pseudospectral(const SpectralField& f, int grid);

enum class Functional { energy, enstrophy };

/// d/dt Q(phi) along the drift: 2 sum_{k>0} w_k Re(conj(phi_k) B_k), with
/// w_k = (2 pi |k| / L)^2 for energy and ^4 for enstrophy.
double quadratic_derivative(const SpectralField& f, Functional functional);

struct JacobianEstimate {
  double trace = 0.0;
  double frobenius = 0.0;
};

/// Central finite-difference Jacobian of the drift in the real coordinates
/// (Re phi_k, Im phi_k) of every boxed mode. Throws for eps <= 0.
JacobianEstimate jacobian_trace_estimate(const SpectralField& f, double eps = 1e-5);

}  // namespace euler2d
