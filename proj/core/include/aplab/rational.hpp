#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace aplab {

/// Exact arbitrary-precision rational. All martingale-lab arithmetic runs on this type.
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" (decimal integers only). Throws DataError on anything else
/// or on a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

/// True iff delta > sqrt(bound_squared), for bound_squared >= 0. Lets thresholds that are
/// square roots of rationals be compared without leaving exact arithmetic.
bool exceeds_sqrt(const Rational& delta, const Rational& bound_squared);

/// True iff delta >= sqrt(bound_squared), for bound_squared >= 0.
bool at_least_sqrt(const Rational& delta, const Rational& bound_squared);

}  // namespace aplab
