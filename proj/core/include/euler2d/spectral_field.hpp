#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "euler2d/mode_index.hpp"

namespace euler2d {

using Complex = std::complex<double>;

/// Positive modes of a cutoff box with O(1) mode -> slot lookup.
///
/// Slots follow mode_box() order. The lookup table spans the full box
/// closure [-n1, n1] x [-n2, n2], so negative modes can be resolved to the
/// slot of their conjugate partner.
class ModeLayout {
 public:
  explicit ModeLayout(Cutoff cutoff);

  [[nodiscard]] Cutoff cutoff() const { return cutoff_; }
  [[nodiscard]] std::size_t size() const { return modes_.size(); }
  [[nodiscard]] std::span<const ModeIndex> modes() const { return modes_; }
  [[nodiscard]] ModeIndex mode(std::size_t slot) const { return modes_[slot]; }

  /// Slot of a positive in-box mode, or -1.
  [[nodiscard]] std::ptrdiff_t slot(ModeIndex k) const;

  /// Index of any mode of the closure in the dense (2n1+1)(2n2+1) table.
  [[nodiscard]] std::size_t closure_index(ModeIndex m) const {
    return static_cast<std::size_t>(m.k1 + cutoff_.n1) * static_cast<std::size_t>(2 * cutoff_.n2 + 1) +
           static_cast<std::size_t>(m.k2 + cutoff_.n2);
  }
  [[nodiscard]] std::size_t closure_size() const {
    return static_cast<std::size_t>(2 * cutoff_.n1 + 1) * static_cast<std::size_t>(2 * cutoff_.n2 + 1);
  }

 private:
  Cutoff cutoff_;
  std::vector<ModeIndex> modes_;
  std::vector<std::ptrdiff_t> lookup_;
};

/// Real scalar field on the periodic square [0, L]^2 stored as the complex
/// coefficients of its positive modes. The represented function is
///
///   phi(x) = sum_{k > 0} ( phi_k e_k(x) + conj(phi_k e_k(x)) ),
///   e_k(x) = exp(i 2 pi k.x / L) / L,
///
/// so phi_{-k} = conj(phi_k) is implicit and the zero mode is absent.
class SpectralField {
 public:
  /// Zero field. Throws std::invalid_argument for a non-positive period or
  /// a cutoff component below 1.
  SpectralField(double period, Cutoff cutoff);
  SpectralField(double period, std::shared_ptr<const ModeLayout> layout);

  [[nodiscard]] double period() const { return period_; }
  [[nodiscard]] Cutoff cutoff() const { return layout_->cutoff(); }
  [[nodiscard]] const ModeLayout& layout() const { return *layout_; }
  [[nodiscard]] const std::shared_ptr<const ModeLayout>& layout_ptr() const { return layout_; }
  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
  [[nodiscard]] std::span<const ModeIndex> modes() const { return layout_->modes(); }

  [[nodiscard]] std::span<Complex> coeffs() { return coeffs_; }
  [[nodiscard]] std::span<const Complex> coeffs() const { return coeffs_; }
  Complex& operator[](std::size_t slot) { return coeffs_[slot]; }
  const Complex& operator[](std::size_t slot) const { return coeffs_[slot]; }

  /// Coefficient of a positive in-box mode; throws std::out_of_range otherwise.
  [[nodiscard]] Complex at(ModeIndex k) const;
  void set(ModeIndex k, Complex value);

  /// Coefficient of any lattice mode under the conjugate-pair convention:
  /// conj(phi_{-m}) for negative m, zero outside the box and at m = 0.
  [[nodiscard]] Complex coefficient(ModeIndex m) const;

  /// Same period and cutoff.
  [[nodiscard]] bool compatible(const SpectralField& other) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  SpectralField& operator*=(Complex s);

  /// Largest |phi_k|.
  [[nodiscard]] double max_abs() const;

 private:
  void require_compatible(const SpectralField& other, const char* op) const;

  double period_;
  std::shared_ptr<const ModeLayout> layout_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(Complex s, SpectralField a);

/// Copy of `f` keeping only the modes with k^2 == norm2.
SpectralField project_onto_shell(const SpectralField& f, std::int64_t norm2);

}  // namespace euler2d
