#include "milnor/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace milnor {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (char c : text)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  Integer num = parse_integer(body.substr(0, slash), text);
  Integer den(1);
  if (slash != std::string_view::npos) {
    den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 significant bits fit in a long long after scaling.
  long long scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer num(scaled);
  Integer den(1);
  if (exponent >= 0)
    num <<= exponent;
  else
    den <<= -exponent;
  return Rational(num, den);
}

}  // namespace milnor
