#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb {

enum class MonotoneSign { positive, negative };

// Rational homology data of the base B of a prequantization M^{2n+1} -> B.
struct BaseManifold {
  int n = 1;
  std::vector<std::int64_t> betti;  // b_0 .. b_{2n}
  std::int64_t chern_min = 1;       // c_B
  MonotoneSign monotone_sign = MonotoneSign::positive;

  std::int64_t euler_char() const;
  std::int64_t b(std::int64_t i) const;  // 0 outside [0, 2n]

  friend bool operator==(const BaseManifold&, const BaseManifold&) = default;
};

// Throws InvalidInput on a wrong Betti length, negative entries, b_0 < 1, a
// failure of Poincare duality, or non-positive n or c_B.
void validate_base(const BaseManifold& base);

// Hypotheses the rank formula relies on that can be read off the data:
// c_B > n/2, and odd Betti numbers vanishing or c_B > n. One message each.
std::vector<std::string> hypothesis_warnings(const BaseManifold& base);

// Rank of the equivariant homology in degree m. Positive monotone bases use
// b_m = sum_{j>=1} b^B_{m - 2 j c_B + n}, negative ones
// b_m = sum_{j>=1} b^B_{m + 2 j c_B - n}.
std::int64_t hc_rank(const BaseManifold& base, std::int64_t m);

// (-1)^n chi(B) / (2 c_B); the same value serves for either monotone sign.
Rational mean_euler_char(const BaseManifold& base);

// (1 / 2c_B) sum_{m=start}^{start+2c_B-1} (-1)^m hc_rank(m).
Rational windowed_mean_euler_char(const BaseManifold& base, std::int64_t start);

// chi(B) + 2 b_n for n odd, chi(B) + 4 b_{n-1} for n even.
std::int64_t r_bound(const BaseManifold& base);
// r_bound - b_n
std::int64_t r_nonhyp_bound(const BaseManifold& base);

// Lower bound for degenerate forms with mu_- >= q; clipped at 0.
std::int64_t deg_lower_bound(std::int64_t n, std::int64_t q);

// Base data of the standard contact sphere S^{2n+1}, i.e. CP^n.
BaseManifold complex_projective(int n);

// One row of the CROSS tables. Rows are families in a parameter (n or m);
// `base` builds the Betti data for an admissible parameter value and the
// formula fields evaluate the tabulated closed forms.
struct CrossFamily {
  std::string name;
  std::string manifold;  // shared by the rows of both tables describing one space
  std::string parameter;  // "n", "m" or "" for a single manifold
  std::string r_formula;
  std::string c_formula;
  std::function<bool(std::int64_t)> admissible;
  std::function<BaseManifold(std::int64_t)> base;
  std::function<std::int64_t(std::int64_t)> value;  // r_B or r_nonhyp
  std::function<std::int64_t(std::int64_t)> chern;  // c_B, unused in the second table
};

struct CrossEntry {
  std::string name;
  BaseManifold base;
  std::int64_t r_B = 0;
  std::int64_t r_nonhyp = 0;
  std::int64_t c_B = 0;
};

// Rows of the rank table (r_B, c_B) and of the non-hyperbolic table.
const std::vector<CrossFamily>& cross_rank_table();
const std::vector<CrossFamily>& cross_nonhyp_table();

// Concrete entries of the rank table for parameter values up to `max_param`.
std::vector<CrossEntry> cross_catalog(std::int64_t max_param = 4);

// Aligned text rendering of both tables, and key=value rows.
std::string render_catalog_text();
std::string render_catalog_machine();

}  // namespace reeb
