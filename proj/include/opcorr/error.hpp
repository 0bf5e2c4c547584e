#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opcorr {

enum class ErrorKind {
  NegativeWeight,
  NotNormalized,
  UnknownPoint,
  WeightsNotConvex,
  SpaceMismatch,
  NotProductSpace,
  NotAbsolutelyContinuous,
  MarginalMismatch,
  EnumerationBoundExceeded,
  UndefinedCoefficient,
  OddEnsembleSize,
  ParseError,
  ValidationError,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported as an Error carrying a kind and a
/// message that names the offending object together with a witness value.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace opcorr
