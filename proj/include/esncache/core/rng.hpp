#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace esncache {

std::uint64_t splitmix64(std::uint64_t x);

// Derives an independent stream seed from a base seed, a purpose tag and up to
// two indices (typically user and slot).
std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose, std::uint64_t a = 0,
                          std::uint64_t b = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Unit-mean exponential.
  double exponential();
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace esncache
