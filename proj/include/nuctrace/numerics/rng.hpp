#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "nuctrace/numerics/types.hpp"

namespace nuctrace::numerics {

// Seeded generator whose output depends only on the seed. The standard
// distributions are implementation-defined, so variates are derived from the
// raw 64-bit engine output instead.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal (Box-Muller).
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  cplx complex_normal() {
    const double re = normal();
    return {re, normal()};
  }

  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nuctrace::numerics
