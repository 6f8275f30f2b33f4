#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace entrolab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a/b", an integer, or a decimal such as "0.125" / "1.5e-3" into an
/// exact rational. Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);
long double to_long_double(const Rational& value);

/// Exact rational value of a finite double (every double is dyadic).
Rational rational_from_double(double value);

}  // namespace entrolab
