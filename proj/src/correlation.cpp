#include "opcorr/correlation.hpp"

#include <cmath>

#include "opcorr/error.hpp"

namespace opcorr {

namespace {

// (A1⊠A2)μ computed directly from the factor rows, without materializing
// the product observable.
ProbabilityMeasure product_observable_at(const Observable& a1, const Observable& a2, const ProbabilityMeasure& mu,
                                         const SpaceRef& target) {
  WeightMap acc;
  for (const auto& [omega, m] : mu.weights()) {
    for (const auto& [x1, w1] : a1.row(omega).weights()) {
      for (const auto& [x2, w2] : a2.row(omega).weights()) acc[target->join(x1, x2)] += m * w1 * w2;
    }
  }
  return make_probability_measure(target, std::move(acc));
}

Density checked_density(const ProbabilityMeasure& num, const ProbabilityMeasure& den, std::string_view what) {
  if (!is_absolutely_continuous(num, den)) {
    // Ruled out for genuine joints; reaching this means a library bug.
    throw Error(ErrorKind::InternalInvariant, std::string(what) + ": numerator " + describe(num) +
                                                  " is not absolutely continuous w.r.t. " + describe(den));
  }
  return radon_nikodym(num, den);
}

}  // namespace

CorrelationMeasures correlation_measures(const JointObservable& j, const ProbabilityMeasure& mu) {
  require_same_space(j.phase_space(), mu.space(), "joint '" + j.id() + "' at state");
  const SpaceRef& target = j.outcome_space();
  return CorrelationMeasures{
      product(apply(j.left(), mu), apply(j.right(), mu), target),
      product_observable_at(j.left(), j.right(), mu, target),
      apply(j.base(), mu),
  };
}

bool independent_at(const JointObservable& j, const ProbabilityMeasure& mu) {
  require_same_space(j.phase_space(), mu.space(), "independent_at '" + j.id() + "'");
  return apply(j.base(), mu) == product(apply(j.left(), mu), apply(j.right(), mu), j.outcome_space());
}

Density rho_c(const Observable& a1, const Observable& a2, const ProbabilityMeasure& mu) {
  require_same_space(a1.phase_space(), mu.space(), "rho_c '" + a1.id() + "'");
  require_same_space(a2.phase_space(), mu.space(), "rho_c '" + a2.id() + "'");
  const SpaceRef target = FiniteSpace::product(a1.outcome_space(), a2.outcome_space());
  return checked_density(product_observable_at(a1, a2, mu, target), product(apply(a1, mu), apply(a2, mu), target),
                         "rho_c");
}

Density rho_e(const JointObservable& j, const ProbabilityMeasure& mu) {
  require_same_space(j.phase_space(), mu.space(), "rho_e '" + j.id() + "'");
  return checked_density(apply(j.base(), mu), product_observable_at(j.left(), j.right(), mu, j.outcome_space()),
                         "rho_e");
}

Density rho_t(const JointObservable& j, const ProbabilityMeasure& mu) {
  require_same_space(j.phase_space(), mu.space(), "rho_t '" + j.id() + "'");
  return checked_density(apply(j.base(), mu),
                         product(apply(j.left(), mu), apply(j.right(), mu), j.outcome_space()), "rho_t");
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::independent: return "independent";
    case Classification::classical_only: return "classical_only";
    case Classification::entangled_only: return "entangled_only";
    case Classification::both: return "both";
  }
  return "unknown";
}

CorrelationReport classify(const JointObservable& j, const ProbabilityMeasure& mu) {
  auto measures = correlation_measures(j, mu);
  auto rc = checked_density(measures.product, measures.independent, "rho_c");
  auto re = checked_density(measures.joint, measures.product, "rho_e");
  auto rt = checked_density(measures.joint, measures.independent, "rho_t");
  const bool classical = !(measures.product == measures.independent);
  const bool entangled = !(measures.joint == measures.product);
  Classification c = Classification::independent;
  if (classical && entangled) {
    c = Classification::both;
  } else if (classical) {
    c = Classification::classical_only;
  } else if (entangled) {
    c = Classification::entangled_only;
  }
  return CorrelationReport{mu, j, std::move(measures), std::move(rc), std::move(re), std::move(rt),
                           classical, entangled, c};
}

bool satisfies_product_rule(const Density& rc, const Density& re, const Density& rt) {
  const std::size_t n = rt.space()->size();
  for (std::size_t p = 0; p < n; ++p) {
    const auto c = rc.at(p);
    const auto e = re.at(p);
    const auto t = rt.at(p);
    if (e) {
      if (!c || !t || *t != *c * *e) return false;
    } else if ((c && *c != 0) || (t && *t != 0)) {
      return false;
    }
  }
  return true;
}

Rational Covariance::coefficient_squared() const {
  if (variance1 == 0 || variance2 == 0) {
    throw Error(ErrorKind::UndefinedCoefficient, "variances are " + to_string(variance1) + " and " +
                                                     to_string(variance2));
  }
  return covariance * covariance / (variance1 * variance2);
}

double Covariance::coefficient() const {
  const double r = std::sqrt(coefficient_squared().get_d());
  return covariance < 0 ? -r : r;
}

Covariance covariance(const ProbabilityMeasure& nu, std::span<const Rational> values1,
                      std::span<const Rational> values2) {
  const SpaceRef& space = nu.space();
  if (values1.size() != space->left()->size() || values2.size() != space->right()->size()) {
    throw Error(ErrorKind::ValidationError, "value maps do not cover the factors of '" + space->id() + "'");
  }
  Rational e1 = 0, e2 = 0, e11 = 0, e22 = 0, e12 = 0;
  for (const auto& [p, w] : nu.weights()) {
    const auto [i1, i2] = space->split(p);
    const Rational& x = values1[i1];
    const Rational& y = values2[i2];
    e1 += w * x;
    e2 += w * y;
    e11 += w * x * x;
    e22 += w * y * y;
    e12 += w * x * y;
  }
  return Covariance{e12 - e1 * e2, e11 - e1 * e1, e22 - e2 * e2};
}

Covariance correlation_coefficient(const ProbabilityMeasure& nu, std::span<const Rational> values1,
                                   std::span<const Rational> values2) {
  auto c = covariance(nu, values1, values2);
  c.coefficient_squared();
  return c;
}

}  // namespace opcorr
