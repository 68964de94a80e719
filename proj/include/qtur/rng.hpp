#pragma once

// Counter-based random numbers (Philox4x32-10).
//
// A stream is addressed by (master seed, stream index). Every draw is a
// pure function of (seed, stream, draw counter), so results do not depend
// on execution order or thread count. Uniform doubles are formed from the
// raw bits directly; std:: distributions are avoided because their output
// is implementation-defined.

#include <array>
#include <cstdint>

namespace qtur {

/// One Philox4x32 block with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;  ///< index of the next 64-bit word
  std::array<std::uint32_t, 4> block_{};
};

}  // namespace qtur
