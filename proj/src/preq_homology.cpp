#include "reeb/preq_homology.hpp"

#include <algorithm>

#include "reeb/errors.hpp"

namespace reeb {

namespace {

// floor(a / b) and ceil(a / b) for b > 0
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

}  // namespace

std::int64_t BaseManifold::euler_char() const {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i < betti.size(); ++i) chi += (i % 2 == 0) ? betti[i] : -betti[i];
  return chi;
}

std::int64_t BaseManifold::b(std::int64_t i) const {
  if (i < 0 || i >= static_cast<std::int64_t>(betti.size())) return 0;
  return betti[static_cast<std::size_t>(i)];
}

void validate_base(const BaseManifold& base) {
  if (base.n < 1) throw InvalidInput("base dimension parameter n must be positive");
  if (base.chern_min < 1) throw InvalidInput("minimal Chern number must be positive");
  const std::size_t want = 2 * static_cast<std::size_t>(base.n) + 1;
  if (base.betti.size() != want) {
    throw InvalidInput("expected " + std::to_string(want) + " Betti numbers, got " +
                       std::to_string(base.betti.size()));
  }
  for (std::int64_t b : base.betti) {
    if (b < 0) throw InvalidInput("Betti numbers must be nonnegative");
  }
  if (base.betti[0] < 1) throw InvalidInput("b_0 must be at least 1");
  for (std::size_t i = 0; i < want; ++i) {
    if (base.betti[i] != base.betti[want - 1 - i]) {
      throw InvalidInput("Betti numbers violate Poincare duality at degree " +
                         std::to_string(i));
    }
  }
}

std::vector<std::string> hypothesis_warnings(const BaseManifold& base) {
  std::vector<std::string> out;
  if (2 * base.chern_min <= base.n) {
    out.push_back("c_B = " + std::to_string(base.chern_min) + " does not exceed n/2");
  }
  bool odd_vanish = true;
  for (std::size_t i = 1; i < base.betti.size(); i += 2) odd_vanish = odd_vanish && base.betti[i] == 0;
  if (!odd_vanish && base.chern_min <= base.n) {
    out.push_back("odd Betti numbers do not vanish and c_B <= n");
  }
  return out;
}

std::int64_t hc_rank(const BaseManifold& base, std::int64_t m) {
  const std::int64_t n = base.n;
  const std::int64_t period = 2 * base.chern_min;
  std::int64_t total = 0;
  if (base.monotone_sign == MonotoneSign::positive) {
    // degree m + n - 2jc must land in [0, 2n]
    const std::int64_t lo = std::max<std::int64_t>(1, ceil_div(m - n, period));
    const std::int64_t hi = floor_div(m + n, period);
    for (std::int64_t j = lo; j <= hi; ++j) total += base.b(m + n - j * period);
  } else {
    const std::int64_t lo = std::max<std::int64_t>(1, ceil_div(n - m, period));
    const std::int64_t hi = floor_div(3 * n - m, period);
    for (std::int64_t j = lo; j <= hi; ++j) total += base.b(m - n + j * period);
  }
  return total;
}

Rational mean_euler_char(const BaseManifold& base) {
  const std::int64_t sign = base.n % 2 == 0 ? 1 : -1;
  return Rational(Integer(sign * base.euler_char()), Integer(2 * base.chern_min));
}

Rational windowed_mean_euler_char(const BaseManifold& base, std::int64_t start) {
  const std::int64_t period = 2 * base.chern_min;
  std::int64_t sum = 0;
  for (std::int64_t m = start; m < start + period; ++m) {
    const std::int64_t r = hc_rank(base, m);
    sum += (m % 2 == 0) ? r : -r;
  }
  return Rational(Integer(sum), Integer(period));
}

std::int64_t r_bound(const BaseManifold& base) {
  const std::int64_t n = base.n;
  if (n % 2 == 1) return base.euler_char() + 2 * base.b(n);
  return base.euler_char() + 4 * base.b(n - 1);
}

std::int64_t r_nonhyp_bound(const BaseManifold& base) {
  return r_bound(base) - base.b(base.n);
}

std::int64_t deg_lower_bound(std::int64_t n, std::int64_t q) {
  if (n < 1) throw InvalidInput("n must be positive");
  const std::int64_t half = (n + 2) / 2;  // ceil((n + 1) / 2)
  const std::int64_t r = (n % 2 == 0 && (q % 2 != 0)) ? q - half : q + 1 - half;
  return std::max<std::int64_t>(0, r);
}

BaseManifold complex_projective(int n) {
  BaseManifold base;
  base.n = n;
  base.betti.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < base.betti.size(); i += 2) base.betti[i] = 1;
  base.chern_min = n + 1;
  base.monotone_sign = MonotoneSign::positive;
  return base;
}

}  // namespace reeb
