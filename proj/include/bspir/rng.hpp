#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bspir/field.hpp"

namespace bspir {

/// SplitMix64 finalizer. All seed derivation goes through this so that ports
/// in other languages can reproduce the exact per-trial streams.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed of trial number `index` under a master seed.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) { return mix64(mix64(master) + index); }

/// Independent randomness sources inside one trial.
enum class Stream : std::uint64_t {
  Data = 1,       // message contents W
  User = 2,       // user secret U
  Server = 3,     // common randomness S and message padding S_W
  Hash = 4,       // hash exponent points p
  Adversary = 5,  // private randomness gamma
  Channel = 6,    // broadcast failure coin
};

/// A seeded 64-bit generator with an explicit, portable sampling rule.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t trial, Stream s) : engine_(mix64(trial ^ mix64(static_cast<std::uint64_t>(s)))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound) by rejection of the biased low tail.
  std::uint64_t below(std::uint64_t bound);

  Elem uniform(const Field& f) { return below(f.modulus()); }
  Elem uniform_nonzero(const Field& f) { return 1 + below(f.modulus() - 1); }

  /// `count` distinct nonzero elements, in draw order.
  std::vector<Elem> distinct_nonzero(const Field& f, std::size_t count);

  Matrix uniform_matrix(const Field& f, std::size_t rows, std::size_t cols);

  /// Uniformly random size-`count` subset of [0, n), sorted ascending.
  std::vector<std::size_t> subset(std::size_t n, std::size_t count);

  /// Bernoulli trial with success probability numerator / denominator.
  bool chance(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bspir
