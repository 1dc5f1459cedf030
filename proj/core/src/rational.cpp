#include "polar/rational.hpp"

#include "polar/errors.hpp"

#include <cctype>

namespace polar {

namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto numerator = text.substr(0, slash);
  const auto denominator =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(numerator) || !is_integer_literal(denominator) ||
      denominator.front() == '-' || denominator.front() == '+') {
    throw Error("malformed rational '" + std::string(text) + "'");
  }
  mpz_class num(std::string(numerator.front() == '+' ? numerator.substr(1) : numerator), 10);
  mpz_class den(std::string(denominator), 10);
  if (den == 0) {
    throw Error("zero denominator in rational '" + std::string(text) + "'");
  }
  Rational value(num, den);
  value.canonicalize();
  return value;
}

Rational ratio(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  Rational value(num, den);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace polar
