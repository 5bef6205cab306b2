#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace unmix {

// Deterministic draws on top of mt19937_64. Distribution shaping is done by
// hand (53-bit uniforms, Box-Muller Gaussians with no cached spare) so that
// seeded streams do not depend on standard-library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal.
  double gaussian() {
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace unmix
