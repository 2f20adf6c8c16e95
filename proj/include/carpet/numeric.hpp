#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace carpet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// base^exp for non-negative exponents.
BigInt ipow(std::uint64_t base, std::uint64_t exp);

/// "numerator/denominator", always both parts, reduced.
std::string to_fraction_string(const Rational& r);
Rational parse_fraction_string(const std::string& s);

/// Fixed-point decimal rendering of an exact rational (truncated toward zero).
std::string to_decimal_string(const Rational& r, unsigned fraction_digits = 12);

double to_double(const Rational& r);

inline Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

}  // namespace carpet
