#pragma once

#include <cstdint>

namespace jamfield {

// splitmix64 finalizer; bijective on 64-bit words.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so evaluation order and parallel scheduling
// cannot change results.
class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : base_(mix64(seed ^ mix64(stream + 0x517cc1b727220a95ull))) {}

  // Uniform in [0, 1).
  double uniform(uint64_t counter) const {
    const uint64_t bits = mix64(base_ ^ mix64(counter));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on two decorrelated uniforms.
  double gaussian(uint64_t counter) const;

 private:
  uint64_t base_;
};

}  // namespace jamfield
