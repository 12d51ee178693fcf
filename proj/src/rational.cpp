#include "reeb/rational.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "reeb/errors.hpp"

namespace reeb {

namespace mp = boost::multiprecision;

Integer floor(const Rational& x) {
  const Integer& num = mp::numerator(x);
  const Integer& den = mp::denominator(x);
  Integer q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

Integer ceil(const Rational& x) {
  return -floor(-x);
}

Rational dist_to_int(const Rational& x) {
  Rational frac = x - Rational(floor(x));
  Rational other = Rational(1) - frac;
  return frac < other ? frac : other;
}

Integer nearest_integer(const Rational& x, bool* tie) {
  Integer lo = floor(x);
  Rational frac = x - Rational(lo);
  const Rational half(1, 2);
  if (tie) *tie = (frac == half);
  return frac < half ? lo : lo + 1;
}

namespace {

bool parse_integer(std::string_view digits, Integer& out) {
  if (digits.empty()) return false;
  std::size_t pos = 0;
  bool negative = false;
  if (digits[0] == '+' || digits[0] == '-') {
    negative = digits[0] == '-';
    pos = 1;
  }
  if (pos == digits.size()) return false;
  for (std::size_t i = pos; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return false;
  }
  out = Integer(std::string(digits.substr(pos)));
  if (negative) out = -out;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string compact;
  compact.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  const auto slash = compact.find('/');
  Integer num;
  Integer den = 1;
  bool ok;
  if (slash == std::string::npos) {
    ok = parse_integer(compact, num);
  } else {
    std::string_view view(compact);
    ok = parse_integer(view.substr(0, slash), num);
    std::string_view den_text = view.substr(slash + 1);
    // Only the numerator may carry a sign.
    ok = ok && !den_text.empty() && den_text[0] != '+' && den_text[0] != '-' &&
         parse_integer(den_text, den);
  }
  if (!ok) throw InvalidInput("malformed rational literal: '" + std::string(text) + "'");
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& x) {
  if (mp::denominator(x) == 1) return mp::numerator(x).str();
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

double to_double(const Rational& x) {
  return x.convert_to<double>();
}

std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("integer " + x.str() + " does not fit in 64 bits");
  }
  return x.convert_to<std::int64_t>();
}

}  // namespace reeb
