#pragma once

#include <span>
#include <string_view>

#include "opcorr/measure.hpp"
#include "opcorr/observable.hpp"

namespace opcorr {

/// Jμ == A1μ ⊠ A2μ, exactly.
bool independent_at(const JointObservable& j, const ProbabilityMeasure& mu);

/// The three outcome measures compared by the correlation densities.
struct CorrelationMeasures {
  ProbabilityMeasure independent;  ///< A1μ ⊠ A2μ
  ProbabilityMeasure product;      ///< (A1⊠A2)μ
  ProbabilityMeasure joint;        ///< Jμ
};

CorrelationMeasures correlation_measures(const JointObservable& j, const ProbabilityMeasure& mu);

/// Classical-correlation function d((A1⊠A2)μ)/d(A1μ⊠A2μ).
Density rho_c(const Observable& a1, const Observable& a2, const ProbabilityMeasure& mu);
/// Entanglement function d(Jμ)/d((A1⊠A2)μ).
Density rho_e(const JointObservable& j, const ProbabilityMeasure& mu);
/// Total-correlation function d(Jμ)/d(A1μ⊠A2μ).
Density rho_t(const JointObservable& j, const ProbabilityMeasure& mu);

enum class Classification { independent, classical_only, entangled_only, both };

std::string_view to_string(Classification c);

struct CorrelationReport {
  ProbabilityMeasure state;
  JointObservable joint;
  CorrelationMeasures measures;
  Density rho_c;
  Density rho_e;
  Density rho_t;
  bool classical;  ///< (A1⊠A2)μ != A1μ⊠A2μ
  bool entangled;  ///< Jμ != (A1⊠A2)μ
  Classification classification;
};

CorrelationReport classify(const JointObservable& j, const ProbabilityMeasure& mu);

/// Checks ρt = ρc·ρe wherever ρe is defined and ρc = ρt = 0 elsewhere.
bool satisfies_product_rule(const Density& rc, const Density& re, const Density& rt);

/// Exact second moments of ν under real-valued labelings of the two factors.
struct Covariance {
  Rational covariance;
  Rational variance1;
  Rational variance2;

  /// cov² / (σ1²·σ2²). Throws UndefinedCoefficient if a variance is 0.
  Rational coefficient_squared() const;
  /// Signed square root of coefficient_squared(), as a double.
  double coefficient() const;
};

/// `values1[i]` labels point i of Ξ1, `values2` likewise for Ξ2.
Covariance covariance(const ProbabilityMeasure& nu, std::span<const Rational> values1,
                      std::span<const Rational> values2);

/// Same as covariance() but throws UndefinedCoefficient when either variance vanishes.
Covariance correlation_coefficient(const ProbabilityMeasure& nu, std::span<const Rational> values1,
                                   std::span<const Rational> values2);

}  // namespace opcorr
