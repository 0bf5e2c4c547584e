#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opcorr/measure.hpp"
#include "opcorr/observable.hpp"

namespace opcorr {

/// A validated system: one phase space, its outcome spaces, named states,
/// observables and joint observables. Objects keep their declaration order.
struct SystemFile {
  SpaceRef phase_space;
  std::vector<SpaceRef> outcome_spaces;
  /// Optional numeric labels of outcome points, keyed by outcome space id.
  std::vector<std::pair<std::string, std::vector<Rational>>> values;
  std::vector<std::pair<std::string, ProbabilityMeasure>> states;
  std::vector<std::pair<std::string, Observable>> observables;
  std::vector<std::pair<std::string, JointObservable>> joints;

  const SpaceRef* find_outcome_space(std::string_view id) const;
  const std::vector<Rational>* find_values(std::string_view space_id) const;
  const ProbabilityMeasure* find_state(std::string_view name) const;
  const Observable* find_observable(std::string_view name) const;
  const JointObservable* find_joint(std::string_view name) const;
};

/// Parses and validates a system document. Throws Error(ParseError) with
/// line and column for malformed JSON and Error(ValidationError) naming the
/// offending object otherwise.
SystemFile parse_system(std::string_view text);

/// Reads `path` and calls parse_system. Throws std::runtime_error if the
/// file cannot be read.
SystemFile load(const std::filesystem::path& path);

}  // namespace opcorr
