#pragma once

#include <array>
#include <cstdint>

namespace compreg {

/// Philox4x32-10 block function: maps a 128-bit counter and 64-bit key to 128
/// pseudo-random bits.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/**
 * Counter-based random stream addressed by (seed, slot, stream).
 *
 * The seed is the Philox key; `slot` (typically a replicate or draw index)
 * and `stream` (a role within that slot) fix the upper 96 bits of the
 * counter, and the low 32 bits count blocks within the stream. Any two
 * streams with different addresses are therefore disjoint, and a stream's
 * output does not depend on which thread consumes it or in what order.
 */
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t slot, std::uint32_t stream) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal variate by inversion of `uniform()`.
  double normal() noexcept;

  /// 1 with probability p, else 0.
  int bernoulli(double p) noexcept;

 private:
  void refill() noexcept;

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter buffer_{};
  unsigned used_ = 4;
};

}  // namespace compreg
