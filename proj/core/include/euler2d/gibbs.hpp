#pragma once

#include "euler2d/rng.hpp"
#include "euler2d/sobolev.hpp"
#include "euler2d/spectral_field.hpp"

namespace euler2d {

/// Enstrophy-Gibbs Gaussian measure on the box: density proportional to
/// exp(-(gamma/2) S(phi)).
struct GibbsParams {
  double gamma = 1.0;
  double period = 1.0;
  Cutoff cutoff{1, 1};

  /// Throws std::invalid_argument on gamma <= 0, period <= 0 or a cutoff below (1, 1).
  void validate() const;
};

/// E|a_k|^2 = (2 / gamma) (L / (2 pi |k|))^4.
double variance_oracle(ModeIndex k, const GibbsParams& p);

/// One draw a_k = chi_k sqrt(variance_oracle(k)) for every boxed positive
/// mode, chi_k = mode_gaussian(stream, k). The draw is a pure function of
/// (stream, k), so sub-boxes of two cutoffs see identical coefficients.
SpectralField sample(const GibbsParams& p, const RngStream& stream);

/// log(rho(f) / rho(g)) = -(gamma/2) (S(f) - S(g)).
double log_density_ratio(const SpectralField& f, const SpectralField& g, const GibbsParams& p);

struct DyadicPair {
  SpectralField coarse;  ///< period 2^n
  SpectralField fine;    ///< period 2^m
};

/// Fields at periods 2^n and 2^m driven by one Gaussian family.
///
/// `base.period` must be 1; `base.cutoff` is read as R per unit length and
/// level j uses cutoff R 2^j, so both boxes cover the frequency window
/// |nu_i| <= R_i. The fine field is exactly sample() at level m. With
/// r = 2^(m-n), each coarse mode k takes
///
///   chi_k = r^(-1/2) sum_{j=0}^{r-1} chi^fine_{r k + (j, j)},
///
/// a standard complex Gaussian built from fine-level variables at matched
/// frequency. n == m returns two identical fields. Throws for n > m or n < 0.
DyadicPair coupled_dyadic_pair(int n, int m, const GibbsParams& base, const RngStream& stream);

/// Exact covariance E[Phi(x) Phi(y)] of the truncated field:
/// sum_{k>0} variance_oracle(k) 2 Re(e_k(x) conj(e_k(y))).
double field_covariance(const GibbsParams& p, Point x, Point y);

}  // namespace euler2d
