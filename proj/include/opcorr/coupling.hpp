#pragma once

#include <cstddef>
#include <vector>

#include "opcorr/measure.hpp"

namespace opcorr {

inline constexpr std::size_t kDefaultEnumerationBound = 16;

/// A probability measure on Ξ1×Ξ2 together with the two marginals it was
/// built to reproduce. One coupling is one row Jδω of a joint observable.
class Coupling {
 public:
  /// Throws MarginalMismatch if `joint` does not have the given marginals.
  Coupling(ProbabilityMeasure joint, ProbabilityMeasure nu1, ProbabilityMeasure nu2);

  const ProbabilityMeasure& measure() const noexcept { return joint_; }
  const ProbabilityMeasure& first() const noexcept { return nu1_; }
  const ProbabilityMeasure& second() const noexcept { return nu2_; }

  friend bool operator==(const Coupling& a, const Coupling& b) { return a.joint_ == b.joint_; }

 private:
  ProbabilityMeasure joint_;
  ProbabilityMeasure nu1_;
  ProbabilityMeasure nu2_;
};

/// When `target` is null a fresh product space is created.
Coupling product_coupling(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2, SpaceRef target = nullptr);

/// Northwest-corner coupling along the given point orders (permutations of
/// each factor's indices; empty means declared order).
Coupling comonotone_coupling(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2,
                             const std::vector<std::size_t>& order1 = {}, const std::vector<std::size_t>& order2 = {},
                             SpaceRef target = nullptr);

/// All extreme points of the transportation polytope of (nu1, nu2), sorted
/// by support (lexicographic in point index), duplicate free.
/// Throws EnumerationBoundExceeded when |Ξ1|·|Ξ2| > bound.
std::vector<Coupling> vertex_couplings(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2,
                                       std::size_t bound = kDefaultEnumerationBound, SpaceRef target = nullptr);

/// Σ|a(p) − b(p)| / 2.
Rational total_variation(const Measure& a, const Measure& b);

struct ExtremalCoupling {
  Coupling coupling;
  Rational distance;
};

/// The vertex coupling farthest from `reference` in total variation; the
/// first in vertex_couplings() order wins ties.
ExtremalCoupling most_entangling_row(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2,
                                     const Coupling& reference, std::size_t bound = kDefaultEnumerationBound);

}  // namespace opcorr
