#include "opcorr/measure.hpp"

#include "opcorr/error.hpp"

namespace opcorr {

Measure::Measure(SpaceRef space, WeightMap weights) : space_(std::move(space)) {
  for (auto& [point, w] : weights) {
    w.canonicalize();
    if (point >= space_->size()) {
      throw Error(ErrorKind::UnknownPoint,
                  "index " + std::to_string(point) + " is outside space '" + space_->id() + "'");
    }
    if (w < 0) {
      throw Error(ErrorKind::NegativeWeight,
                  "weight " + to_string(w) + " at '" + space_->label(point) + "' of space '" + space_->id() + "'");
    }
    if (w != 0) weights_.emplace(point, std::move(w));
  }
}

Rational Measure::weight(std::size_t point) const {
  auto it = weights_.find(point);
  return it == weights_.end() ? Rational(0) : it->second;
}

std::vector<std::size_t> Measure::support() const {
  std::vector<std::size_t> out;
  out.reserve(weights_.size());
  for (const auto& [p, w] : weights_) out.push_back(p);
  return out;
}

Rational Measure::total() const {
  Rational sum = 0;
  for (const auto& [p, w] : weights_) sum += w;
  return sum;
}

Rational Measure::mass(std::span<const std::size_t> subset) const {
  Rational sum = 0;
  for (std::size_t p : subset) sum += weight(p);
  return sum;
}

bool operator==(const Measure& a, const Measure& b) {
  return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
}

ProbabilityMeasure ProbabilityMeasure::from_measure(Measure m) {
  const Rational sum = m.total();
  if (sum != 1) {
    throw Error(ErrorKind::NotNormalized, "weights on space '" + m.space()->id() + "' sum to " + to_string(sum));
  }
  return ProbabilityMeasure(std::move(m));
}

ProbabilityMeasure make_probability_measure(const SpaceRef& space,
                                            const std::vector<std::pair<std::string, Rational>>& weights) {
  WeightMap map;
  for (const auto& [label, w] : weights) {
    const std::size_t i = space->index_of(label);
    if (w < 0) {
      throw Error(ErrorKind::NegativeWeight, "weight " + to_string(w) + " at '" + label + "' of space '" + space->id() + "'");
    }
    map[i] += w;
  }
  return make_probability_measure(space, std::move(map));
}

ProbabilityMeasure make_probability_measure(const SpaceRef& space, WeightMap weights) {
  return ProbabilityMeasure::from_measure(Measure(space, std::move(weights)));
}

ProbabilityMeasure dirac(const SpaceRef& space, std::size_t point) {
  return make_probability_measure(space, WeightMap{{point, Rational(1)}});
}

ProbabilityMeasure dirac(const SpaceRef& space, std::string_view label) { return dirac(space, space->index_of(label)); }

ProbabilityMeasure uniform(const SpaceRef& space) {
  WeightMap w;
  const Rational each(1, space->size());
  for (std::size_t i = 0; i < space->size(); ++i) w.emplace(i, each);
  return make_probability_measure(space, std::move(w));
}

ProbabilityMeasure mix(const std::vector<std::pair<Rational, ProbabilityMeasure>>& components) {
  if (components.empty()) throw Error(ErrorKind::WeightsNotConvex, "empty mixture");
  Rational lambda_sum = 0;
  WeightMap acc;
  const SpaceRef& space = components.front().second.space();
  for (const auto& [lambda, mu] : components) {
    if (lambda < 0) throw Error(ErrorKind::WeightsNotConvex, "negative mixing weight " + to_string(lambda));
    require_same_space(space, mu.space(), "mix");
    lambda_sum += lambda;
    for (const auto& [p, w] : mu.weights()) acc[p] += lambda * w;
  }
  if (lambda_sum != 1) throw Error(ErrorKind::WeightsNotConvex, "mixing weights sum to " + to_string(lambda_sum));
  return make_probability_measure(space, std::move(acc));
}

ProbabilityMeasure product(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2) {
  return product(nu1, nu2, FiniteSpace::product(nu1.space(), nu2.space()));
}

ProbabilityMeasure product(const ProbabilityMeasure& nu1, const ProbabilityMeasure& nu2, const SpaceRef& target) {
  require_same_space(target->left(), nu1.space(), "product (left factor)");
  require_same_space(target->right(), nu2.space(), "product (right factor)");
  WeightMap w;
  for (const auto& [p1, w1] : nu1.weights()) {
    for (const auto& [p2, w2] : nu2.weights()) w.emplace(target->join(p1, p2), w1 * w2);
  }
  return make_probability_measure(target, std::move(w));
}

ProbabilityMeasure marginal(const ProbabilityMeasure& nu, int index) {
  const SpaceRef& space = nu.space();
  if (index != 1 && index != 2) throw Error(ErrorKind::NotProductSpace, "marginal index must be 1 or 2");
  const SpaceRef& factor = index == 1 ? space->left() : space->right();
  WeightMap w;
  for (const auto& [p, weight] : nu.weights()) {
    const auto [i1, i2] = space->split(p);
    w[index == 1 ? i1 : i2] += weight;
  }
  return make_probability_measure(factor, std::move(w));
}

bool is_independent(const ProbabilityMeasure& nu) {
  return nu == product(marginal(nu, 1), marginal(nu, 2), nu.space());
}

bool is_absolutely_continuous(const Measure& numerator, const Measure& denominator) {
  require_same_space(numerator.space(), denominator.space(), "absolute continuity");
  for (const auto& [p, w] : numerator.weights()) {
    if (!denominator.in_support(p)) return false;
  }
  return true;
}

std::optional<Rational> Density::at(std::size_t point) const {
  auto it = values_.find(point);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> Density::domain() const {
  std::vector<std::size_t> out;
  out.reserve(values_.size());
  for (const auto& [p, v] : values_) out.push_back(p);
  return out;
}

bool Density::is_constant_one() const {
  for (const auto& [p, v] : values_) {
    if (v != 1) return false;
  }
  return true;
}

bool operator==(const Density& a, const Density& b) {
  return same_space(a.space_, b.space_) && a.values_ == b.values_;
}

Density radon_nikodym(const Measure& numerator, const Measure& denominator) {
  require_same_space(numerator.space(), denominator.space(), "radon_nikodym");
  for (const auto& [p, w] : numerator.weights()) {
    if (!denominator.in_support(p)) {
      throw Error(ErrorKind::NotAbsolutelyContinuous,
                  "numerator has weight " + to_string(w) + " at '" + numerator.space()->label(p) +
                      "' where the reference measure vanishes");
    }
  }
  WeightMap values;
  for (const auto& [p, d] : denominator.weights()) values.emplace(p, numerator.weight(p) / d);
  return Density(denominator.space(), std::move(values));
}

std::string describe(const Measure& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [p, w] : m.weights()) {
    if (!first) out += ", ";
    first = false;
    out += m.space()->label(p) + ":" + to_string(w);
  }
  return out + "}";
}

}  // namespace opcorr
