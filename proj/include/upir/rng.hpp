#pragma once

#include <cstdint>
#include <random>

namespace upir {

/// Seeded 64-bit generator. `uniform` uses rejection sampling on the raw
/// engine output, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, n); n must be positive.
  std::size_t uniform(std::size_t n);
  /// Uniform double in [0, 1).
  double unit();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Independent stream seed for run `index` under `master` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace upir
