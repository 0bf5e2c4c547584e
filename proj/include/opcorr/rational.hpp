#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace opcorr {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// p/q in canonical form. mpq_class(p, q) alone does not reduce.
inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p" or "-p/q". Decimal points, exponents and q = 0 are rejected.
/// Throws opcorr::Error(kind ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal rendering with 6 significant digits.
std::string to_decimal(const Rational& value);

}  // namespace opcorr
