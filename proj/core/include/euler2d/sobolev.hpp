#pragma once

#include <vector>

#include "euler2d/spectral_field.hpp"

namespace euler2d {

/// Order beta of the periodic Sobolev space H^beta. Any finite real.
struct SobolevOrder {
  double beta = 0.0;
};

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// 2 pi |k| / L.
double wavenumber(ModeIndex k, double period);

/// ||f||_beta = sqrt( sum_{k>0} (2 pi |k| / L)^(2 beta) |phi_k|^2 ).
double sobolev_norm(const SpectralField& f, SobolevOrder order);

/// E = sum_{k>0} (2 pi |k| / L)^2 |phi_k|^2  (= ||f||_1^2).
double energy(const SpectralField& f);

/// S = sum_{k>0} (2 pi |k| / L)^4 |phi_k|^2  (= ||f||_2^2).
double enstrophy(const SpectralField& f);

/// D^beta f: multiplies phi_k by (2 pi |k| / L)^beta.
SpectralField fractional_derivative(const SpectralField& f, double beta);

/// phi(x) = 2 Re sum_{k>0} phi_k e_k(x). Any x is accepted (periodic).
double evaluate(const SpectralField& f, Point x);

/// phi on the tensor grid xs[i] x ys[j], row-major in i.
std::vector<double> evaluate_grid(const SpectralField& f, const std::vector<double>& xs,
                                  const std::vector<double>& ys);

/// Parameters of the local metric
///   d(f, g) = sum_{l=1..lmax} 2^-l C(l) x_l / (1 + x_l),
///   x_l = || D^beta (f - g) ||_{L^2([0, l]^2)},
/// with C(l) = 1. The window integrals use the midpoint rule on
/// `points_per_unit` cells per unit length.
struct LocalMetricConfig {
  int lmax = 4;
  int points_per_unit = 64;
};

/// x_1 .. x_lmax for a single field (the windowed L^2 norms of D^beta f).
std::vector<double> windowed_norms(const SpectralField& f, SobolevOrder order,
                                   const LocalMetricConfig& cfg);

/// Local distance between fields sharing period and cutoff; throws
/// std::invalid_argument on a mismatch or lmax < 1.
double local_distance(const SpectralField& f, const SpectralField& g, SobolevOrder order,
                      const LocalMetricConfig& cfg = {});

/// Local distance between fields of arbitrary period and cutoff: D^beta is
/// applied to each field on its own torus before the window integral.
double local_distance_mixed(const SpectralField& f, const SpectralField& g, SobolevOrder order,
                            const LocalMetricConfig& cfg = {});

/// Combines windowed norms x_l into sum 2^-l x_l / (1 + x_l).
double combine_windowed(const std::vector<double>& x);

}  // namespace euler2d
