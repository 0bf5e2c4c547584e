#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcorr/rational.hpp"
#include "opcorr/space.hpp"

namespace opcorr {

/// Sparse map from point index to weight. Zero weights are never stored,
/// so the key set is exactly the support.
using WeightMap = std::map<std::size_t, Rational>;

/// A finite nonnegative measure with exact rational weights.
class Measure {
 public:
  /// Throws NegativeWeight or UnknownPoint (index out of range).
  Measure(SpaceRef space, WeightMap weights);

  const SpaceRef& space() const noexcept { return space_; }
  const WeightMap& weights() const noexcept { return weights_; }

  Rational weight(std::size_t point) const;
  bool in_support(std::size_t point) const { return weights_.contains(point); }
  std::vector<std::size_t> support() const;
  Rational total() const;
  /// ν(X) for a subset X given as point indices.
  Rational mass(std::span<const std::size_t> subset) const;

  friend bool operator==(const Measure& a, const Measure& b);

 private:
  SpaceRef space_;
  WeightMap weights_;
};

/// A Measure whose weights sum to exactly 1. Only the factory functions
/// below produce one.
class ProbabilityMeasure : public Measure {
 public:
  /// Throws NotNormalized with the exact sum when Σ weights != 1.
  static ProbabilityMeasure from_measure(Measure m);

 private:
  explicit ProbabilityMeasure(Measure m) : Measure(std::move(m)) {}
};

/// Weights by point label.
ProbabilityMeasure make_probability_measure(const SpaceRef& space,
                                            const std::vector<std::pair<std::string, Rational>>& weights);
ProbabilityMeasure make_probability_measure(const SpaceRef& space, WeightMap weights);

ProbabilityMeasure dirac(const SpaceRef& space, std::size_t point);
ProbabilityMeasure dirac(const SpaceRef& space, std::string_view label);

ProbabilityMeasure uniform(const SpaceRef& space);

/// Convex combination Σ λi·μi. Throws WeightsNotConvex or SpaceMismatch.
ProbabilityMeasure mix(const std::vector<std::pair<Rational, ProbabilityMeasure>>& components);

/// ν1⊠ν2 on a fresh product space, or on `target` when given (which must be
/// the product of the two factor spaces).
ProbabilityMeasure product(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2);
ProbabilityMeasure product(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2, const SpaceRef& target);

/// Π1 (index 1) or Π2 (index 2). Throws NotProductSpace.
ProbabilityMeasure marginal(const ProbabilityMeasure& nu, int index);

/// True iff nu is a product of its own marginals.
bool is_independent(const ProbabilityMeasure& nu);

/// support(numerator) ⊆ support(denominator). Throws SpaceMismatch.
bool is_absolutely_continuous(const Measure& numerator, const Measure& denominator);

/// A density defined exactly on the support of its reference measure.
/// Points outside that support are undefined, which is not the same as 0.
class Density {
 public:
  Density(SpaceRef space, WeightMap values) : space_(std::move(space)), values_(std::move(values)) {}

  const SpaceRef& space() const noexcept { return space_; }
  /// Domain points with their values; zeros are kept here.
  const WeightMap& values() const noexcept { return values_; }

  std::optional<Rational> at(std::size_t point) const;
  bool defined_at(std::size_t point) const { return values_.contains(point); }
  std::vector<std::size_t> domain() const;
  bool is_constant_one() const;

  friend bool operator==(const Density& a, const Density& b);

 private:
  SpaceRef space_;
  WeightMap values_;
};

/// d(numerator)/d(denominator): value numerator(p)/denominator(p) at each p
/// in support(denominator). Throws NotAbsolutelyContinuous naming a witness.
Density radon_nikodym(const Measure& numerator, const Measure& denominator);

/// Human-readable "{a:1/2, b:1/2}".
std::string describe(const Measure& m);

}  // namespace opcorr
