#include "reeb/index_core.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "reeb/errors.hpp"

namespace reeb {

namespace mp = boost::multiprecision;

namespace {

bool fits_i64(const Integer& x) {
  return x <= std::numeric_limits<std::int64_t>::max() &&
         x >= std::numeric_limits<std::int64_t>::min();
}

Integer from_i128(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  Integer out = Integer(static_cast<std::uint64_t>(u >> 64));
  out <<= 64;
  out += Integer(static_cast<std::uint64_t>(u));
  return neg ? Integer(-out) : out;
}

void check_iterate(const PathModel& path, std::int64_t k) {
  if (k < 1) {
    throw InvalidInput("iterate must be positive, got " + std::to_string(k));
  }
  if (k > path.nondeg_bound) {
    throw IterateOutOfCertifiedRange("iterate " + std::to_string(k) +
                                     " exceeds certified bound " +
                                     std::to_string(path.nondeg_bound));
  }
}

}  // namespace

std::int64_t max_certifiable_bound(const PathModel& path) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t bound = kMax;
  for (const Rational& lambda : path.elliptic) {
    const Integer& den = mp::denominator(lambda);
    if (den == 1) return 0;
    if (den <= kMax) bound = std::min(bound, den.convert_to<std::int64_t>() - 1);
  }
  return bound;
}

PathModel validate_path(PathModel path, std::int64_t max_iterate) {
  if (max_iterate < 1) {
    throw InvalidInput("nondegeneracy bound must be at least 1");
  }
  for (std::size_t q = 0; q < path.elliptic.size(); ++q) {
    const Integer& den = mp::denominator(path.elliptic[q]);
    // l * (p/q) is integral exactly when q divides l.
    if (den <= max_iterate) {
      const auto l = den.convert_to<std::int64_t>();
      throw DegenerateIterate(q, l,
                              "elliptic block " + std::to_string(q) + " (rotation " +
                                  to_string(path.elliptic[q]) + ") is degenerate at iterate " +
                                  std::to_string(l));
    }
  }
  path.nondeg_bound = max_iterate;
  return path;
}

std::int64_t cz_index(const PathModel& path, std::int64_t k) {
  check_iterate(path, k);
  Integer total = Integer(2) * path.loop_maslov * k;
  __int128 fast_total = 0;
  for (std::size_t q = 0; q < path.elliptic.size(); ++q) {
    const Integer& num = mp::numerator(path.elliptic[q]);
    const Integer& den = mp::denominator(path.elliptic[q]);
    if (fits_i64(num) && fits_i64(den)) {
      const __int128 x = static_cast<__int128>(num.convert_to<std::int64_t>()) * k;
      const std::int64_t qd = den.convert_to<std::int64_t>();
      if (x % qd == 0) {
        throw DegenerateIterate(q, k, "iterate " + std::to_string(k) + " of elliptic block " +
                                          std::to_string(q) + " is degenerate");
      }
      __int128 fl = x / qd;
      if (x < 0) --fl;  // x is not a multiple of qd here
      fast_total += 2 * fl + 1;
      continue;
    }
    const Rational rotation = path.elliptic[q] * k;
    if (mp::denominator(rotation) == 1) {
      throw DegenerateIterate(q, k, "iterate " + std::to_string(k) + " of elliptic block " +
                                        std::to_string(q) + " is degenerate");
    }
    // sign(x)(2 floor|x| + 1) == 2 floor(x) + 1 for non-integral x.
    total += 2 * floor(rotation) + 1;
  }
  for (std::int64_t h : path.hyperbolic) total += Integer(h) * k;
  total += from_i128(fast_total);
  return to_int64(total);
}

Rational mean_index(const PathModel& path, std::int64_t k) {
  if (k < 0) throw InvalidInput("mean index iterate must be nonnegative");
  Rational per_iterate = Rational(2 * path.loop_maslov);
  for (const Rational& lambda : path.elliptic) per_iterate += 2 * lambda;
  for (std::int64_t h : path.hyperbolic) per_iterate += h;
  return per_iterate * k;
}

bool is_good(const PathModel& path, std::int64_t k) {
  check_iterate(path, k);
  // Loop terms are even and every elliptic block contributes an odd number,
  // so only the hyperbolic slope sum can flip the parity of even iterates.
  if (k % 2 == 1) return true;
  std::int64_t slope_parity = 0;
  for (std::int64_t h : path.hyperbolic) slope_parity ^= (h & 1);
  return slope_parity == 0;
}

PathModel invert(const PathModel& path) {
  PathModel out = path;
  out.loop_maslov = -path.loop_maslov;
  for (Rational& lambda : out.elliptic) lambda = -lambda;
  for (std::int64_t& h : out.hyperbolic) h = -h;
  return out;
}

PathModel direct_sum(const PathModel& a, const PathModel& b) {
  PathModel out;
  out.loop_maslov = a.loop_maslov + b.loop_maslov;
  out.elliptic = a.elliptic;
  out.elliptic.insert(out.elliptic.end(), b.elliptic.begin(), b.elliptic.end());
  out.hyperbolic = a.hyperbolic;
  out.hyperbolic.insert(out.hyperbolic.end(), b.hyperbolic.begin(), b.hyperbolic.end());
  out.nondeg_bound = std::min(a.nondeg_bound, b.nondeg_bound);
  return out;
}

std::int64_t signed_iterate_index(const PathModel& path, std::int64_t l) {
  if (l == 0) throw InvalidInput("iterate 0 has no Conley-Zehnder index");
  return l > 0 ? cz_index(path, l) : -cz_index(path, -l);
}

}  // namespace reeb
