#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "opcorr/measure.hpp"

namespace opcorr {

/// A stochastic kernel from a phase space to an outcome space, stored by its
/// rows on pure states. Action on mixed states always goes through apply().
class Observable {
 public:
  /// `rows[ω]` is the outcome measure at δω. Throws SpaceMismatch when a row
  /// lives elsewhere and ValidationError when the row count is wrong.
  Observable(std::string id, SpaceRef phase_space, SpaceRef outcome_space, std::vector<ProbabilityMeasure> rows);

  const std::string& id() const noexcept { return id_; }
  const SpaceRef& phase_space() const noexcept { return phase_; }
  const SpaceRef& outcome_space() const noexcept { return outcome_; }
  const std::vector<ProbabilityMeasure>& rows() const noexcept { return rows_; }
  const ProbabilityMeasure& row(std::size_t omega) const { return rows_.at(omega); }

  /// Extensional: same spaces and same rows. Ids are ignored.
  friend bool operator==(const Observable& a, const Observable& b);

 private:
  std::string id_;
  SpaceRef phase_;
  SpaceRef outcome_;
  std::vector<ProbabilityMeasure> rows_;
};

/// (Aμ)(x) = Σ_ω μ(ω)·(Aδω)(x).
ProbabilityMeasure apply(const Observable& a, const ProbabilityMeasure& mu);

/// Every row is a Dirac measure.
bool is_deterministic(const Observable& a);

/// An observable into Ξ1×Ξ2 whose marginal observables are `left` and `right`.
class JointObservable {
 public:
  const Observable& base() const noexcept { return base_; }
  const Observable& left() const noexcept { return *left_; }
  const Observable& right() const noexcept { return *right_; }
  const std::string& id() const noexcept { return base_.id(); }
  const SpaceRef& phase_space() const noexcept { return base_.phase_space(); }
  const SpaceRef& outcome_space() const noexcept { return base_.outcome_space(); }

  friend bool operator==(const JointObservable& a, const JointObservable& b) {
    return a.base_ == b.base_ && *a.left_ == *b.left_ && *a.right_ == *b.right_;
  }

 private:
  friend JointObservable make_joint(const Observable&, const Observable&, std::vector<ProbabilityMeasure>, std::string);

  JointObservable(Observable base, std::shared_ptr<const Observable> left, std::shared_ptr<const Observable> right)
      : base_(std::move(base)), left_(std::move(left)), right_(std::move(right)) {}

  Observable base_;
  std::shared_ptr<const Observable> left_;
  std::shared_ptr<const Observable> right_;
};

/// Validates that each row has marginals a1.row(ω) and a2.row(ω) exactly.
/// Rows may live on any product space structurally equal to Ξ1×Ξ2.
/// Throws MarginalMismatch naming ω, the index and both measures.
JointObservable make_joint(const Observable& a1, const Observable& a2, std::vector<ProbabilityMeasure> rows,
                           std::string id = "");

/// The product joint observable: row ω is a1.row(ω) ⊠ a2.row(ω).
JointObservable product_joint(const Observable& a1, const Observable& a2);

/// Πi ∘ J, recomputed from the rows.
Observable marginal_observable(const JointObservable& j, int index);

}  // namespace opcorr
