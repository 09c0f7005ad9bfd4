#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace euler2d {

/// Integer lattice point of Z^2 labelling a Fourier mode.
struct ModeIndex {
  int k1 = 0;
  int k2 = 0;

  constexpr auto operator<=>(const ModeIndex&) const = default;

  /// k^2 = k1^2 + k2^2.
  [[nodiscard]] constexpr std::int64_t norm2() const {
    return std::int64_t{k1} * k1 + std::int64_t{k2} * k2;
  }
  /// k-perp = (-k2, k1).
  [[nodiscard]] constexpr ModeIndex perp() const { return {-k2, k1}; }
  [[nodiscard]] constexpr ModeIndex operator-() const { return {-k1, -k2}; }
  [[nodiscard]] constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }
};

constexpr ModeIndex operator+(ModeIndex a, ModeIndex b) { return {a.k1 + b.k1, a.k2 + b.k2}; }
constexpr ModeIndex operator-(ModeIndex a, ModeIndex b) { return {a.k1 - b.k1, a.k2 - b.k2}; }
constexpr ModeIndex operator*(int s, ModeIndex a) { return {s * a.k1, s * a.k2}; }

constexpr std::int64_t dot(ModeIndex a, ModeIndex b) {
  return std::int64_t{a.k1} * b.k1 + std::int64_t{a.k2} * b.k2;
}

/// Positivity convention splitting Z^2 \ {0} into k and -k halves:
/// k1 > 0, or k1 == 0 and k2 > 0.
constexpr bool is_positive(ModeIndex k) { return k.k1 > 0 || (k.k1 == 0 && k.k2 > 0); }

/// Truncation box |k1| <= n1, |k2| <= n2.
struct Cutoff {
  int n1 = 0;
  int n2 = 0;

  constexpr bool operator==(const Cutoff&) const = default;

  [[nodiscard]] constexpr bool contains(ModeIndex k) const {
    return k.k1 >= -n1 && k.k1 <= n1 && k.k2 >= -n2 && k.k2 <= n2;
  }
  /// Number of positive modes in the box: n1(2 n2 + 1) + n2.
  [[nodiscard]] constexpr std::size_t positive_count() const {
    return static_cast<std::size_t>(n1) * (2 * static_cast<std::size_t>(n2) + 1) +
           static_cast<std::size_t>(n2);
  }
  [[nodiscard]] constexpr int max_component() const { return n1 > n2 ? n1 : n2; }
};

/// All positive modes of the box, lexicographic in (k1, k2).
/// Throws std::invalid_argument unless n1, n2 >= 1.
std::vector<ModeIndex> mode_box(Cutoff cutoff);

}  // namespace euler2d
