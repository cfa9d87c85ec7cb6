#include "sics/rng.hpp"

#include <cmath>
#include <limits>

namespace sics {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  // Odd multiplier: stream -> master + k * (stream + 1) is a bijection mod 2^64.
  return mix64(master + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  const double u = lo + (hi - lo) * uniform();
  // Guard the half-open contract against rounding up to hi.
  return u < hi ? u : std::nextafter(hi, lo);
}

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double q = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    q = u * u + v * v;
  } while (q >= 1.0 || q == 0.0);
  const double f = std::sqrt(-2.0 * std::log(q) / q);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

}  // namespace sics
