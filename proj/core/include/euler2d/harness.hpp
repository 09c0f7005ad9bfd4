#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler2d/gibbs.hpp"
#include "euler2d/integrator.hpp"
#include "euler2d/stats.hpp"
#include "json.hpp"

namespace euler2d {

enum class ObservableKind {
  coeff_real,
  coeff_imag,
  coeff_abs2,
  energy,
  enstrophy,
  sobolev_norm,
  spectrum_band,
};

/// A scalar function of a field. `mode` is used by the coefficient kinds,
/// `beta` by sobolev_norm, and the shell range [band_lo, band_hi] of |k| by
/// spectrum_band (sum of |phi_k|^2 over the band).
struct ObservableSpec {
  ObservableKind kind = ObservableKind::energy;
  ModeIndex mode{};
  double beta = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] double evaluate(const SpectralField& f) const;
  /// Throws std::invalid_argument if the parameters are unusable on `cutoff`.
  void validate(Cutoff cutoff) const;
  [[nodiscard]] bool is_mode_marginal() const {
    return kind == ObservableKind::coeff_real || kind == ObservableKind::coeff_imag ||
           kind == ObservableKind::coeff_abs2;
  }
};

/// Real and imaginary part of every boxed mode, then energy and enstrophy.
std::vector<ObservableSpec> default_observables(Cutoff cutoff);

/// Fixed decision thresholds shared by all experiments.
struct Thresholds {
  double ks_alpha = 0.01;
  double marginal_pass_fraction = 0.95;
  double mean_window_se = 3.0;
  double calibration_alpha = 0.01;
  double max_failure_fraction = 0.01;
  double moment_stability = 0.05;
  double continuity_variation = 0.25;
};

struct RunOptions {
  int threads = 1;
  Thresholds thresholds{};
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// More than the allowed fraction of ensemble members failed to integrate.
class EnsembleAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObservableResult {
  ObservableSpec spec;
  SummaryStats pre;
  SummaryStats post;
  KsResult ks;
};

struct EnsembleReport {
  GibbsParams params;
  IntegratorConfig integrator;
  RngStream rng;
  std::size_t ensemble_size = 0;
  std::size_t failures = 0;
  double max_energy_drift = 0.0;
  double max_enstrophy_drift = 0.0;
  SummaryStats energy_pre, energy_post, enstrophy_pre, enstrophy_post;
  std::vector<ObservableResult> observables;
  double marginal_pass_fraction = 0.0;
  ChiSquareResult calibration;
  Thresholds thresholds;
  std::vector<Verdict> verdicts;

  [[nodiscard]] bool all_pass() const;
};

/// Invariance test of the Gibbs measure under the Galerkin flow.
///
/// Draws `n` initial fields from family rng.fork(2), evolves each to
/// cfg.t_final, and compares every observable against an independent fresh
/// ensemble of `n` draws from rng.fork(1) with a two-sample KS test. Members
/// whose integration fails are dropped and counted; EnsembleAbort is thrown
/// when they exceed thresholds.max_failure_fraction.
///
/// Verdicts: mode_marginals (fraction of coefficient tests with p >= alpha),
/// energy_mean and enstrophy_mean (|mean difference| within
/// mean_window_se combined standard errors plus the worst per-trajectory
/// drift), null_calibration (chi-square of all p-values on deciles).
EnsembleReport run_invariance(const GibbsParams& p, const IntegratorConfig& cfg,
                              const std::vector<ObservableSpec>& observables, std::size_t n,
                              const RngStream& rng, const RunOptions& options = {});

struct MomentRow {
  Cutoff cutoff;
  double beta;
  int p;
  double mean;
  double std_error;
};

struct MomentVerdict {
  double beta;
  int p;
  double last_relative_change;
  bool strictly_increasing;
  /// "stable", "divergence signature" or "unstable".
  std::string verdict;
};

struct MomentTable {
  GibbsParams params;
  RngStream rng;
  std::size_t ensemble_size = 0;
  std::vector<Cutoff> cutoffs;
  std::vector<MomentRow> rows;
  std::vector<MomentVerdict> verdicts;
  Thresholds thresholds;
};

/// Monte Carlo estimates of E ||B(Phi)||_{H^beta}^{2p} for each cutoff (in
/// the given order), beta and p. Sample i at every cutoff uses stream i of
/// rng.fork(3), so nested boxes share coefficients. A (beta, p) pair is
/// "stable" when the last two estimates differ by less than
/// thresholds.moment_stability relative, otherwise "divergence signature" if
/// the estimates strictly increase, otherwise "unstable".
MomentTable moment_scan(const GibbsParams& p, const std::vector<double>& betas,
                        const std::vector<int>& pexps, const std::vector<Cutoff>& cutoffs,
                        std::size_t n, const RngStream& rng, const RunOptions& options = {});

struct CauchyRow {
  int n;
  double mean_d2;
  double std_error;
};

struct CauchyTable {
  GibbsParams base;
  RngStream rng;
  double beta = 0.0;
  LocalMetricConfig metric;
  std::size_t ensemble_size = 0;
  std::vector<CauchyRow> rows;
  bool strictly_decreasing = false;
};

/// E d^2_{beta,2}(Phi_{2^n}, Phi_{2^{n+1}}) over coupled dyadic pairs, one
/// row per n. `base` follows coupled_dyadic_pair (period 1, cutoff per unit
/// length). Throws for beta >= 1.
CauchyTable cauchy_scan(const GibbsParams& base, const std::vector<int>& n_values, double beta,
                        std::size_t n, const RngStream& rng, const LocalMetricConfig& metric = {},
                        const RunOptions& options = {});

struct ContinuityRow {
  double delta;
  double median_out;
  double p90_out;
  double median_in;
  double median_ratio;
};

struct ContinuityTable {
  GibbsParams params;
  IntegratorConfig integrator;
  RngStream rng;
  double beta = 0.0;
  LocalMetricConfig metric;
  std::size_t ensemble_size = 0;
  std::vector<ContinuityRow> rows;
  std::size_t failures = 0;
  bool median_nondecreasing = false;
  /// |r_a - r_b| / min(r_a, r_b) for the median ratios at the two smallest
  /// positive deltas.
  double ratio_variation = 0.0;
  bool ratio_stable = false;
  Thresholds thresholds;
};

/// Sensitivity of the flow to initial data. Base fields come from
/// rng.fork(4), perturbation directions Psi from rng.fork(5) normalized to
/// ||Psi||_{H^beta} = 1. Reports d(U(t, Phi), U(t, Phi + delta Psi)) against
/// d(Phi, Phi + delta Psi). Deltas must be >= 0.
ContinuityTable continuity_probe(const GibbsParams& p, const IntegratorConfig& cfg,
                                 const std::vector<double>& deltas, std::size_t n,
                                 const RngStream& rng, SobolevOrder beta,
                                 const LocalMetricConfig& metric = {},
                                 const RunOptions& options = {});

/// Report serialization; every document carries "schema", "code_version"
/// and "rng_algorithm".
inline constexpr const char* kReportSchema = "euler2d.report/1";
nlohmann::json to_json(const EnsembleReport& r);
nlohmann::json to_json(const MomentTable& t);
nlohmann::json to_json(const CauchyTable& t);
nlohmann::json to_json(const ContinuityTable& t);

/// Plot-ready CSV summaries.
std::string to_csv(const EnsembleReport& r);
std::string to_csv(const MomentTable& t);
std::string to_csv(const CauchyTable& t);
std::string to_csv(const ContinuityTable& t);

}  // namespace euler2d
