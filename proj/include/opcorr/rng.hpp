#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "opcorr/measure.hpp"

namespace opcorr {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output of substream (seed, stream) is a
/// pure function of (seed, stream, i), so trials can run in any order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

  std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  /// Uniform in [0, bound), bound > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [0, bound) for an arbitrary-precision bound > 0.
  mpz_class below(const mpz_class& bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Draws points of a rational-weighted measure exactly: weights are scaled
/// to a common denominator L and a uniform integer in [0, L) selects the
/// point by cumulative sum.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const Measure& m);

  std::size_t operator()(CounterRng& rng) const;

 private:
  std::vector<std::size_t> points_;
  std::vector<std::uint64_t> cumulative_;  // used when L < 2^64
  std::vector<mpz_class> big_cumulative_;  // otherwise
  std::uint64_t total_ = 0;
  mpz_class big_total_;
  bool small_ = true;
};

}  // namespace opcorr
