#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace kbin {

/// Exact fraction in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", "p", or a finite decimal such as "0.25" into an exact value.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

BigInt floor(const Rational& value);
BigInt ceil(const Rational& value);

/// Integer ceiling of a non-negative rational that must fit in int64.
std::int64_t ceil_to_int64(const Rational& value);
std::int64_t floor_to_int64(const Rational& value);

double to_double(const Rational& value);

/// Exact conversion of a finite double (every finite double is dyadic).
Rational from_double(double value);

}  // namespace kbin
