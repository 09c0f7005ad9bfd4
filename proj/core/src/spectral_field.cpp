#include "euler2d/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace euler2d {

ModeLayout::ModeLayout(Cutoff cutoff) : cutoff_(cutoff), modes_(mode_box(cutoff)) {
  lookup_.assign(closure_size(), -1);
  for (std::size_t s = 0; s < modes_.size(); ++s) {
    lookup_[closure_index(modes_[s])] = static_cast<std::ptrdiff_t>(s);
  }
}

std::ptrdiff_t ModeLayout::slot(ModeIndex k) const {
  if (!cutoff_.contains(k)) return -1;
  return lookup_[closure_index(k)];
}

namespace {

double checked_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    std::ostringstream msg;
    msg << "SpectralField: period must be positive and finite, got " << period;
    throw std::invalid_argument(msg.str());
  }
  return period;
}

}  // namespace

SpectralField::SpectralField(double period, Cutoff cutoff)
    : SpectralField(period, std::make_shared<const ModeLayout>(cutoff)) {}

SpectralField::SpectralField(double period, std::shared_ptr<const ModeLayout> layout)
    : period_(checked_period(period)), layout_(std::move(layout)) {
  if (!layout_) throw std::invalid_argument("SpectralField: null layout");
  coeffs_.assign(layout_->size(), Complex{});
}

Complex SpectralField::at(ModeIndex k) const {
  const auto s = layout_->slot(k);
  if (s < 0) {
    std::ostringstream msg;
    msg << "SpectralField::at: mode (" << k.k1 << ", " << k.k2
        << ") is not a positive mode of the box";
    throw std::out_of_range(msg.str());
  }
  return coeffs_[static_cast<std::size_t>(s)];
}

void SpectralField::set(ModeIndex k, Complex value) {
  const auto s = layout_->slot(k);
  if (s < 0) {
    std::ostringstream msg;
    msg << "SpectralField::set: mode (" << k.k1 << ", " << k.k2
        << ") is not a positive mode of the box";
    throw std::out_of_range(msg.str());
  }
  coeffs_[static_cast<std::size_t>(s)] = value;
}

Complex SpectralField::coefficient(ModeIndex m) const {
  if (m.is_zero() || !layout_->cutoff().contains(m)) return {};
  if (is_positive(m)) return coeffs_[static_cast<std::size_t>(layout_->slot(m))];
  return std::conj(coeffs_[static_cast<std::size_t>(layout_->slot(-m))]);
}

bool SpectralField::compatible(const SpectralField& other) const {
  return period_ == other.period_ && cutoff() == other.cutoff();
}

void SpectralField::require_compatible(const SpectralField& other, const char* op) const {
  if (!compatible(other)) {
    std::ostringstream msg;
    msg << "SpectralField " << op << ": incompatible fields (period " << period_ << " vs "
        << other.period_ << ", cutoff (" << cutoff().n1 << "," << cutoff().n2 << ") vs ("
        << other.cutoff().n1 << "," << other.cutoff().n2 << "))";
    throw std::invalid_argument(msg.str());
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other, "+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other, "-=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

SpectralField project_onto_shell(const SpectralField& f, std::int64_t norm2) {
  SpectralField out = f;
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (out.modes()[s].norm2() != norm2) out[s] = Complex{};
  }
  return out;
}

}  // namespace euler2d
