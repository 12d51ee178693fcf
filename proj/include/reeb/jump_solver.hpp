#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reeb/index_core.hpp"
#include "reeb/rational.hpp"

namespace reeb {

struct JumpParams {
  Rational eta = Rational(1, 10);
  std::int64_t ell0 = 1;
  std::int64_t divisor = 1;
  std::int64_t search_bound = 10'000'000;
  // Tolerance for the k' scan. Derived from k+ when absent.
  std::optional<Rational> delta;
  // Threads used by the k1 prefilter; the result does not depend on it.
  int workers = 1;

  friend bool operator==(const JumpParams&, const JumpParams&) = default;
};

// Throws InvalidInput unless 0 < eta < 1/2 and every integer field is positive.
void check_params(const JumpParams& params);

struct JumpCertificate {
  std::int64_t d_plus = 0;
  std::vector<std::int64_t> k_plus;
  std::int64_t d_minus = 0;
  std::vector<std::int64_t> k_minus;
  JumpParams params;

  friend bool operator==(const JumpCertificate&, const JumpCertificate&) = default;
};

// min over 1 <= l <= ell0 and every elliptic rotation of ||l * lambda||.
// nullopt when no path has an elliptic block (the constraint is vacuous).
std::optional<Rational> epsilon0(const std::vector<PathModel>& paths, std::int64_t ell0);

// min(eps0, eta / (2 max half_dim), 1 / (4 * total elliptic blocks)).
std::optional<Rational> solver_epsilon(const std::vector<PathModel>& paths,
                                       const JumpParams& params);

// Smallest certificate with k+_1 > min_k1 in the order (k+_1, k+ lexicographic,
// k-_1). Throws HypothesisViolated when some mean index is not positive and
// SearchExhausted when nothing is found with k_1 <= search_bound.
JumpCertificate find_common_jump(const std::vector<PathModel>& paths, const JumpParams& params,
                                 std::int64_t min_k1 = 0);

struct JumpCheck {
  std::string name;
  bool passed = true;
  std::string counterexample{};  // first failure, empty when passed
};

struct JumpReport {
  std::vector<JumpCheck> checks;
  // Some mean index sits exactly halfway between two integers.
  bool ambiguous_rounding = false;

  bool passed() const;
  // Name and counterexample of the first failed check, or "".
  std::string first_failure() const;
};

// Checks the certificate using index_core only. Never throws on a bad
// certificate; failures land in the report.
JumpReport verify_jump(const std::vector<PathModel>& paths, const JumpCertificate& cert);

// The paths re-validated up to max(k+, k-) + ell0, as needed by the recurrence
// identities. Throws DegenerateIterate if that is impossible.
std::vector<PathModel> certified_paths(const std::vector<PathModel>& paths,
                                       const JumpCertificate& cert);

}  // namespace reeb
