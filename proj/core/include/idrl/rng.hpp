#pragma once

#include <cstdint>
#include <random>

namespace idrl {

// Deterministic RNG used everywhere reproducibility matters. The engine is
// std::mt19937_64 (fully specified by the standard); uniform and normal
// transforms are spelled out here because std::*_distribution algorithms are
// implementation-defined and would break cross-platform determinism.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n must be > 0.
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal, Box-Muller cosine branch.
  double normal();
  double normal(double mean, double std_dev) {
    return mean + std_dev * normal();
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Stateless sub-seed derivation (splitmix64 finalizer). Used to hand
  // independent streams to workers, products and episodes.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b);

private:
  std::mt19937_64 gen_;
};

}  // namespace idrl
