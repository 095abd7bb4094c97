#pragma once

#include <cstdint>

namespace dcgra {

// Deterministic splitmix64 generator. Used instead of <random> distributions
// so that identical seeds give identical results on every platform and
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Independent stream for a sub-task of a seeded computation.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (0xA24BAED4963EE407ull + salt * 0x9FB21C651E98DF25ull));
    return r.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace dcgra
