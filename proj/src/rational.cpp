#include "cellab/rational.hpp"

#include "cellab/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <cctype>

namespace cellab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(long n) {
  BigInt r = 1;
  for (long i = 0; i < n; ++i) r *= 10;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// cpp_int reads a leading 0 as an octal prefix.
BigInt from_digits(std::string_view digits) {
  const auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return BigInt(std::string(digits.substr(first)));
}

Rational parse_decimal(std::string_view s, std::string_view full) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6)
      throw ParseError("bad exponent in number '" + std::string(full) + "'");
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty()))
      throw ParseError("malformed number '" + std::string(full) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw ParseError("malformed number '" + std::string(full) + "'");
    digits = std::string(s);
  }
  const BigInt numerator = from_digits(digits);
  long scale = frac_digits - exponent;
  Rational value = scale >= 0 ? Rational(numerator, pow10(scale)) : Rational(numerator * pow10(-scale));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  if (s.empty()) throw ParseError("empty number");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = trim(s.substr(0, slash));
    auto den = trim(s.substr(slash + 1));
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed fraction '" + std::string(text) + "'");
    const BigInt d = from_digits(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(from_digits(num), d);
    return negative ? Rational(-r) : r;
  }
  return parse_decimal(s, text);
}

BigInt parse_integer(std::string_view text) {
  auto s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || !all_digits(s)) throw ParseError("malformed integer '" + std::string(text) + "'");
  const BigInt v = from_digits(s);
  return negative ? BigInt(-v) : v;
}

std::string to_string(const BigInt& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

BigInt floor(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) { return -floor(Rational(-value)); }

double PiMultiple::value() const { return to_double(coeff) * boost::math::constants::pi<double>(); }

std::string PiMultiple::str() const {
  if (coeff == 0) return "0";
  return to_string(coeff) + "·π";
}

PiMultiple parse_pi_multiple(std::string_view text) {
  auto s = trim(text);
  if (s == "0") return {Rational(0)};
  for (std::string_view suffix : {std::string_view("·π"), std::string_view("*pi"), std::string_view("pi"),
                                  std::string_view("π")}) {
    if (s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix) {
      auto head = trim(s.substr(0, s.size() - suffix.size()));
      if (head.empty()) return {Rational(1)};
      if (head == "-") return {Rational(-1)};
      return {parse_rational(head)};
    }
  }
  throw ParseError("expected a multiple of pi, got '" + std::string(text) + "'");
}

}  // namespace cellab
