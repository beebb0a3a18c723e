#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace cellab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "p/q", "-p/q", or a plain decimal such as "0.375" / "-1.5e-3"
/// into an exact rational.  Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
/// Decimal integer with optional sign; throws ParseError otherwise.
BigInt parse_integer(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

double to_double(const Rational& value);

Rational abs(const Rational& value);

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

/// Exact multiple of pi, printed as "p/q·π".
struct PiMultiple {
  Rational coeff;

  double value() const;
  std::string str() const;

  friend bool operator==(const PiMultiple&, const PiMultiple&) = default;
  friend auto operator<=>(const PiMultiple& a, const PiMultiple& b) {
    return a.coeff < b.coeff ? std::strong_ordering::less
           : b.coeff < a.coeff ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }
};

/// Parses the output of PiMultiple::str() (also accepts "pi" for "π" and "0").
PiMultiple parse_pi_multiple(std::string_view text);

}  // namespace cellab
