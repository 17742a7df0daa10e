#pragma once

#include <cstdint>
#include <random>

namespace lcm {

// Seeded RNG with stdlib-independent derived draws, so identical seeds give
// byte-identical traces regardless of the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // uniform in [lo,hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0,n)
  std::uint64_t below(std::uint64_t n) { return n ? bits() % n : 0; }

  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lcm
