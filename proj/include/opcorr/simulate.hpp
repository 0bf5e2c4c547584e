#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "opcorr/measure.hpp"
#include "opcorr/observable.hpp"

namespace opcorr {

/// Outcome counts from a finite number of trials.
struct EmpiricalMeasure {
  SpaceRef space;
  std::vector<std::uint64_t> counts;  ///< indexed by point
  std::uint64_t total = 0;

  Rational frequency(std::size_t point) const { return total ? Rational(counts.at(point), total) : Rational(0); }

  friend bool operator==(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    return same_space(a.space, b.space) && a.counts == b.counts && a.total == b.total;
  }
};

/// Simultaneous measurement by alternation: A1 on even trials, A2 on odd
/// ones. Only the two single-observable histograms exist; there are no pair
/// counts to build a joint distribution from.
struct AlternatingMeasurement {
  EmpiricalMeasure first;
  EmpiricalMeasure second;
};

/// Largest per-cell excess of |frequency − p| over sigmas·sqrt(p(1−p)/n) + 1/n.
struct BandCheck {
  std::size_t worst_point = 0;
  double worst_deviation = 0;  ///< |frequency − p| at worst_point
  double worst_allowance = 0;  ///< band half-width at worst_point
  bool within = true;
};

BandCheck check_binomial_band(const EmpiricalMeasure& empirical, const Measure& exact, double sigmas = 4.0);

// Trial t draws from substream CounterRng(seed, t). The OpenMP kernels and
// the serial reference below therefore agree bit for bit.

std::vector<std::size_t> sample_state(const ProbabilityMeasure& mu, std::size_t n, std::uint64_t seed);

/// Each trial draws ω ~ μ, then a pair from J's row at ω.
EmpiricalMeasure measure_joint(const JointObservable& j, const ProbabilityMeasure& mu, std::size_t n,
                               std::uint64_t seed);

/// Throws OddEnsembleSize when n is odd.
AlternatingMeasurement measure_alternating(const Observable& a1, const Observable& a2, const ProbabilityMeasure& mu,
                                           std::size_t n, std::uint64_t seed);

namespace serial {

std::vector<std::size_t> sample_state(const ProbabilityMeasure& mu, std::size_t n, std::uint64_t seed);
EmpiricalMeasure measure_joint(const JointObservable& j, const ProbabilityMeasure& mu, std::size_t n,
                               std::uint64_t seed);
AlternatingMeasurement measure_alternating(const Observable& a1, const Observable& a2, const ProbabilityMeasure& mu,
                                           std::size_t n, std::uint64_t seed);

}  // namespace serial

}  // namespace opcorr
