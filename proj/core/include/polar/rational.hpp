#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polar {

/// Exact rational number. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// num/den in canonical form. Throws polar::Error when den is zero.
Rational ratio(long num, long den);

/// Parses "p/q", "p" or "-p/q". Throws polar::Error on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" for non-integers, "p" for integers.
std::string to_string(const Rational& value);

/// Nearest double, for display and plotting only.
inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace polar
