#include "opcorr/observable.hpp"

#include "opcorr/error.hpp"

namespace opcorr {

Observable::Observable(std::string id, SpaceRef phase_space, SpaceRef outcome_space,
                       std::vector<ProbabilityMeasure> rows)
    : id_(std::move(id)), phase_(std::move(phase_space)), outcome_(std::move(outcome_space)), rows_(std::move(rows)) {
  if (rows_.size() != phase_->size()) {
    throw Error(ErrorKind::ValidationError, "observable '" + id_ + "' has " + std::to_string(rows_.size()) +
                                                " rows for a phase space of " + std::to_string(phase_->size()) +
                                                " points");
  }
  for (std::size_t w = 0; w < rows_.size(); ++w) {
    require_same_space(outcome_, rows_[w].space(), "observable '" + id_ + "' row '" + phase_->label(w) + "'");
  }
}

bool operator==(const Observable& a, const Observable& b) {
  return same_space(a.phase_, b.phase_) && same_space(a.outcome_, b.outcome_) && a.rows_ == b.rows_;
}

ProbabilityMeasure apply(const Observable& a, const ProbabilityMeasure& mu) {
  require_same_space(a.phase_space(), mu.space(), "apply '" + a.id() + "'");
  WeightMap acc;
  for (const auto& [omega, m] : mu.weights()) {
    for (const auto& [x, w] : a.row(omega).weights()) acc[x] += m * w;
  }
  return make_probability_measure(a.outcome_space(), std::move(acc));
}

bool is_deterministic(const Observable& a) {
  for (const auto& row : a.rows()) {
    if (row.weights().size() != 1) return false;
  }
  return true;
}

JointObservable make_joint(const Observable& a1, const Observable& a2, std::vector<ProbabilityMeasure> rows,
                           std::string id) {
  require_same_space(a1.phase_space(), a2.phase_space(), "joint of '" + a1.id() + "' and '" + a2.id() + "'");
  if (id.empty()) id = "J(" + a1.id() + "," + a2.id() + ")";
  const SpaceRef& phase = a1.phase_space();
  SpaceRef outcome = rows.empty() ? FiniteSpace::product(a1.outcome_space(), a2.outcome_space()) : rows.front().space();
  if (!outcome->is_product()) throw Error(ErrorKind::NotProductSpace, "joint '" + id + "' rows are not on a product space");
  require_same_space(outcome->left(), a1.outcome_space(), "joint '" + id + "' left factor");
  require_same_space(outcome->right(), a2.outcome_space(), "joint '" + id + "' right factor");
  Observable base(id, phase, outcome, std::move(rows));
  for (std::size_t w = 0; w < phase->size(); ++w) {
    const auto& row = base.row(w);
    for (int index : {1, 2}) {
      const auto m = marginal(row, index);
      const auto& expected = index == 1 ? a1.row(w) : a2.row(w);
      if (!(m == expected)) {
        throw Error(ErrorKind::MarginalMismatch, "joint '" + id + "' at '" + phase->label(w) + "': marginal " +
                                                     std::to_string(index) + " is " + describe(m) + " but '" +
                                                     (index == 1 ? a1.id() : a2.id()) + "' gives " +
                                                     describe(expected));
      }
    }
  }
  return JointObservable(std::move(base), std::make_shared<const Observable>(a1), std::make_shared<const Observable>(a2));
}

JointObservable product_joint(const Observable& a1, const Observable& a2) {
  require_same_space(a1.phase_space(), a2.phase_space(), "product joint of '" + a1.id() + "' and '" + a2.id() + "'");
  const SpaceRef outcome = FiniteSpace::product(a1.outcome_space(), a2.outcome_space());
  std::vector<ProbabilityMeasure> rows;
  rows.reserve(a1.phase_space()->size());
  for (std::size_t w = 0; w < a1.phase_space()->size(); ++w) rows.push_back(product(a1.row(w), a2.row(w), outcome));
  return make_joint(a1, a2, std::move(rows), a1.id() + "#" + a2.id());
}

Observable marginal_observable(const JointObservable& j, int index) {
  std::vector<ProbabilityMeasure> rows;
  rows.reserve(j.base().rows().size());
  for (const auto& row : j.base().rows()) rows.push_back(marginal(row, index));
  const auto& factor = index == 1 ? j.outcome_space()->left() : j.outcome_space()->right();
  return Observable(index == 1 ? j.left().id() : j.right().id(), j.phase_space(), factor, std::move(rows));
}

}  // namespace opcorr
