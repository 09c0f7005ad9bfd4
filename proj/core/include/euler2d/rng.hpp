#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

#include "euler2d/mode_index.hpp"

namespace euler2d {

/// Name recorded in run manifests.
inline constexpr std::string_view kRngAlgorithm = "philox4x32-10";

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11): a keyed bijection of
/// 128-bit counters.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// SplitMix64 finalizer; used only to derive family keys.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform double in (0, 1) from 64 random bits (52-bit grid, offset by half
/// a step so neither endpoint is produced).
double uniform_open(std::uint32_t hi, std::uint32_t lo);

/// A counter-based random stream.
///
/// The Philox key is `master_seed`; the counter of block `b` for mode
/// `(k1, k2)` is
///
///   word0 = uint16(k1) | uint16(k2) << 16
///   word1 = b
///   word2 = low 32 bits of stream_id
///   word3 = high 32 bits of stream_id
///
/// which is injective in (stream_id, mode, block) for |k_i| < 2^15, so every
/// draw is addressed directly and no state is shared between threads.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  constexpr bool operator==(const RngStream&) const = default;

  /// Independent family: key = splitmix64(splitmix64(master_seed) ^ tag), stream 0.
  [[nodiscard]] RngStream fork(std::uint64_t tag) const;
  [[nodiscard]] RngStream with_stream(std::uint64_t id) const { return {master_seed, id}; }

  [[nodiscard]] PhiloxCounter block(ModeIndex mode, std::uint32_t index) const;
};

/// Circularly symmetric complex standard normal for one mode of a stream:
/// independent real and imaginary parts of variance 1/2, so E|z|^2 = 1.
/// Uses the polar Box-Muller map z = sqrt(-ln u1) exp(2 pi i u2).
std::complex<double> mode_gaussian(const RngStream& stream, ModeIndex mode);

}  // namespace euler2d
