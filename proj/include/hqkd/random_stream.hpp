#pragma once

#include <cstdint>
#include <random>

namespace hqkd {

/// Caller-owned source of randomness for protocol rounds.
///
/// Streams are derived from a (seed, stream index) pair through std::seed_seq,
/// so round i of a session always sees the same draws no matter which thread
/// simulates it. Draws are built from raw 64-bit words rather than the
/// standard distributions, whose output is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Fair coin: 0 or 1.
  int bit() { return static_cast<int>(engine_() >> 63); }

  /// Uniform integer in [0, n). n must be a power of two no larger than 2^32.
  std::uint64_t below_pow2(std::uint64_t n) { return (engine_() >> 32) & (n - 1); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hqkd
