#pragma once

#include <cstdint>
#include <vector>

#include "reeb/rational.hpp"

namespace reeb {

/// Homotopy-class model of a strongly nondegenerate symplectic path in
/// block normal form: a loop factor of Maslov winding `loop_maslov`, one
/// rotation block exp(2 pi i lambda t) per elliptic entry, and one
/// hyperbolic block per entry of `hyperbolic` whose k-th iterate carries
/// index k * h.
///
/// Irrational rotation numbers are modelled by exact rationals; strong
/// nondegeneracy is replaced by the certified bound `nondeg_bound`: for
/// every elliptic lambda and every 1 <= l <= nondeg_bound, l * lambda is
/// not an integer. Use validate_path() to establish the certificate.
struct PathModel {
  std::int64_t loop_maslov = 0;
  std::vector<Rational> elliptic;
  std::vector<std::int64_t> hyperbolic;
  std::int64_t nondeg_bound = 1;

  int half_dim() const noexcept {
    return static_cast<int>(elliptic.size() + hyperbolic.size());
  }
  // The end map has no eigenvalue on the unit circle.
  bool is_hyperbolic() const noexcept { return elliptic.empty(); }

  friend bool operator==(const PathModel&, const PathModel&) = default;
};

/// Largest L such that l * lambda is non-integral for every elliptic block
/// and every 1 <= l <= L. For lambda = p/q in lowest terms the first
/// degenerate iterate is q, so this is min(q) - 1 (INT64_MAX when there are
/// no elliptic blocks or every denominator exceeds the 64-bit range).
std::int64_t max_certifiable_bound(const PathModel& path);

/// Certifies `path` up to `max_iterate` and returns a copy whose
/// nondeg_bound equals `max_iterate`. Throws DegenerateIterate naming the
/// first offending (block, iterate), or InvalidInput when max_iterate < 1.
PathModel validate_path(PathModel path, std::int64_t max_iterate);

/// Conley-Zehnder index of the k-th iterate:
///   2 nu k + sum_q sign(k lambda_q)(2 floor|k lambda_q| + 1) + k sum_p h_p.
/// Requires 1 <= k <= nondeg_bound.
std::int64_t cz_index(const PathModel& path, std::int64_t k);

/// Mean index of the k-th iterate, k (2 nu + 2 sum lambda + sum h), k >= 0.
Rational mean_index(const PathModel& path, std::int64_t k);

/// Whether the k-th iterate has the parity of the simple orbit.
bool is_good(const PathModel& path, std::int64_t k);

// mu(Phi^{-1}) = -mu(Phi).
PathModel invert(const PathModel& path);

// Concatenates the blocks and adds the loop windings. The certified bound of
// the result is the smaller of the two.
PathModel direct_sum(const PathModel& a, const PathModel& b);

/// Index of Phi^l for any nonzero integer l, with Phi^{-l} the inverse
/// of Phi^l. Used by the index recurrence identities.
std::int64_t signed_iterate_index(const PathModel& path, std::int64_t l);

}  // namespace reeb
