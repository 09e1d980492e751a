#include "kbin/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace kbin {

namespace {

BigInt parse_integer(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') pos = 1;
  if (pos == text.size()) throw std::invalid_argument("bad integer literal: " + std::string(text));
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw std::invalid_argument("bad integer literal: " + std::string(text));
    }
  }
  // Leading zeros would otherwise select octal in the GMP string constructor.
  std::size_t first = pos;
  while (first + 1 < text.size() && text[first] == '0') ++first;
  std::string digits(text.substr(first));
  if (text[0] == '-') digits.insert(digits.begin(), '-');
  return BigInt(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash));
    BigInt den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    return Rational(num, den);
  }
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Rational mantissa = parse_rational(text.substr(0, e));
    long exponent = std::stol(std::string(text.substr(e + 1)));
    Rational scale(BigInt(1));
    for (long i = 0; i < std::labs(exponent); ++i) scale *= 10;
    return exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa / scale);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    std::string digits(whole);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += frac;
    BigInt num = parse_integer(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(num, den);
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

BigInt floor(const Rational& value) {
  BigInt q = numerator(value) / denominator(value);
  if (value < 0 && Rational(q) != value) q -= 1;
  return q;
}

BigInt ceil(const Rational& value) {
  BigInt q = numerator(value) / denominator(value);
  if (value > 0 && Rational(q) != value) q += 1;
  return q;
}

std::int64_t ceil_to_int64(const Rational& value) {
  BigInt c = ceil(value);
  if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("ceiling does not fit in 64 bits");
  }
  return c.convert_to<std::int64_t>();
}

std::int64_t floor_to_int64(const Rational& value) {
  BigInt f = floor(value);
  if (f > std::numeric_limits<std::int64_t>::max() || f < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("floor does not fit in 64 bits");
  }
  return f.convert_to<std::int64_t>();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);
  // 53 significant bits make the scaled mantissa an exact integer.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational r{BigInt(scaled)};
  if (exponent > 0) {
    r *= Rational(BigInt(1) << exponent);
  } else if (exponent < 0) {
    r /= Rational(BigInt(1) << -exponent);
  }
  return r;
}

}  // namespace kbin
