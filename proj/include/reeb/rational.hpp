#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace reeb {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Exact rounding helpers. All of them work on canonical (lowest-terms,
// positive denominator) rationals, which is what mpq_rational maintains.
Integer floor(const Rational& x);
Integer ceil(const Rational& x);

// Distance to the nearest integer, ||x||.
Rational dist_to_int(const Rational& x);

// Nearest integer to x. Sets *tie when x is exactly a half-integer; the
// returned value is then floor(x) + 1.
Integer nearest_integer(const Rational& x, bool* tie = nullptr);

// Parses an optionally signed "p/q" or integer literal. Whitespace anywhere
// in the literal is ignored. Throws InvalidInput on malformed text or q == 0.
Rational parse_rational(std::string_view text);

// "p/q", or "p" for integers.
std::string to_string(const Rational& x);

double to_double(const Rational& x);

// Narrowing with overflow check; throws std::overflow_error.
std::int64_t to_int64(const Integer& x);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

}  // namespace reeb
