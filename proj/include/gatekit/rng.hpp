#pragma once

#include <cstdint>

namespace gatekit {

// Counter-based generator: draw i is a pure function of (seed, i), so scripts
// regenerate byte-identically across platforms. Standard-library distributions
// are implementation-defined, which would break golden fixtures; bounded draws
// here use rejection sampling over the raw stream instead.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next() { return mix(seed_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  // Uniform in [0, n), unbiased. n must be nonzero.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  // Bernoulli with exact rational probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return bounded(den) < num; }

  // Independent derived stream; the parent stream is not advanced.
  CounterRng fork(std::uint64_t stream) const {
    return CounterRng(mix(seed_ ^ (0xbf58476d1ce4e5b9ull * (stream + 1))));
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace gatekit
