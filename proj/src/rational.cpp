#include "opcorr/rational.hpp"

#include <cctype>
#include <cstdio>

#include "opcorr/error.hpp"

namespace opcorr {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorKind::ParseError, "not a rational literal: \"" + std::string(text) + "\"");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  mpz_class p(n, 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

std::string to_decimal(const Rational& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value.get_d());
  return buf;
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::WeightsNotConvex: return "WeightsNotConvex";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::NotProductSpace: return "NotProductSpace";
    case ErrorKind::NotAbsolutelyContinuous: return "NotAbsolutelyContinuous";
    case ErrorKind::MarginalMismatch: return "MarginalMismatch";
    case ErrorKind::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorKind::UndefinedCoefficient: return "UndefinedCoefficient";
    case ErrorKind::OddEnsembleSize: return "OddEnsembleSize";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

}  // namespace opcorr
