#pragma once

#include <cstdint>
#include <random>

namespace sics {

// SplitMix64 finalizer. A bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Seed for substream `stream` of `master`. Injective in `stream` for a fixed
// master, so distinct counters never share a stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the distributions are implemented here
// so that draws are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on [0, bound), bound > 0, rejection sampled.
  std::uint64_t uniform_index(std::uint64_t bound);
  // Standard normal (Marsaglia polar method).
  double normal();
  // +1 or -1 with equal probability.
  double sign();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sics
