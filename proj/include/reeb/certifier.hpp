#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "reeb/index_core.hpp"
#include "reeb/jump_solver.hpp"
#include "reeb/preq_homology.hpp"
#include "reeb/rational.hpp"

namespace reeb {

struct OrbitModel {
  std::string label;
  PathModel path;
  Rational period = Rational(1);

  friend bool operator==(const OrbitModel&, const OrbitModel&) = default;
};

enum class IndexSign { positive, negative };

// The accepted hypothesis flags.
const std::set<std::string>& flag_vocabulary();

struct SystemModel {
  std::vector<OrbitModel> orbits;
  BaseManifold base;
  IndexSign index_sign = IndexSign::positive;
  std::set<std::string> flags;

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

// Structural checks: distinct labels, positive periods, orbit dimension equal
// to base.n, valid base, known flags, mean indices of the declared sign.
// Throws ValidationError.
void validate_system(const SystemModel& system);

// (-1)^mu(gamma^k) for a good iterate, 0 for a bad one.
int local_euler(const OrbitModel& orbit, std::int64_t k);
// (-1)^mu(gamma) if gamma^2 is good, half of it otherwise.
Rational mean_local_euler(const OrbitModel& orbit);

struct ResonanceResult {
  bool passed = false;
  Rational lhs;  // sum of mean local Euler characteristic over mean index
  Rational rhs;  // mean Euler characteristic of the base data
  Rational residual;
};

// Throws ZeroMeanIndex if some orbit has mean index 0.
ResonanceResult resonance_check(const SystemModel& system);

// max_i ceil((4n + 1) / mean_index(gamma_i)). Throws ZeroMeanIndex.
std::int64_t ell0(const SystemModel& system);

enum class IterateClass { A, B1, B2, C1, C2, D };
const char* class_name(IterateClass c);

struct OrbitWindow {
  std::int64_t k = 0;
  std::int64_t mu_k = 0;
  bool good_k = true;
  std::map<IterateClass, std::int64_t> class_sizes;
  std::int64_t last_iterate = 0;  // classes cover 1..last_iterate except k
};

struct MorseWindow {
  std::int64_t d = 0;
  std::int64_t top = 0;  // D = d (n odd) or d + 1 (n even)
  std::int64_t method_a = 0;  // direct enumeration of good iterates with index <= D
  std::int64_t method_b = 0;  // sum_i sum_{l<=k_i} chi - (r^e_+ - r^o_+)
  std::int64_t euler_sum = 0;  // sum_i sum_{l<=k_i} chi(gamma_i^l)
  std::int64_t r_e_plus = 0, r_o_plus = 0, r_e_minus = 0, r_o_minus = 0;
  std::int64_t c_e_plus = 0, c_o_plus = 0, c_e_minus = 0, c_o_minus = 0;
  // Orbits whose k_i-th iterate is counted by r^o_+/- (n odd) or r^e_+/- (n even).
  std::vector<std::size_t> counted_plus, counted_minus;
  // Number of good iterates per index over [d - 1, d + 1].
  std::map<std::int64_t, std::int64_t> counts_near_d;
  std::vector<OrbitWindow> orbits;
  // Good iterates sitting on the wrong side of D, or other than gamma_i^{k_i}
  // landing on an excluded index next to d. Empty when the argument applies.
  std::vector<std::string> placement_violations;
};

// Window sums for one jump (d, k). The paths are re-validated up to
// max k + ell0 (and up to k + 2 ell0 where possible for class D). Throws
// CertificateMismatch when the recurrence identities or |mu(gamma_i^{k_i}) - d| <= n fail.
MorseWindow morse_window(const SystemModel& system, std::int64_t d,
                         const std::vector<std::int64_t>& k, std::int64_t ell0);

struct BoundOptions {
  std::int64_t divisor_multiple = 1;  // N = multiple * 2 c_B
  std::int64_t ell0 = 0;              // raised to ell0(system) when smaller
  std::int64_t search_bound = 10'000'000;
  std::int64_t min_k1 = 0;
  std::optional<Rational> eta;        // default min(1/10, 1 / (2 |chi|))
  int workers = 1;
};

struct LemmaCheck {
  std::int64_t iterate_sum = 0;  // sum_i sum_{l<=k_i} chi(gamma_i^l)
  Rational mean_sum;             // sum_i k_i mean_chi(gamma_i)
  Rational d_chi;                // d chi_+
  Rational s_chi;                // (-1)^n s chi(B) with d = 2 s c_B
  bool holds = false;
};

struct BoundSide {
  std::int64_t d = 0;
  std::vector<std::int64_t> k;
  MorseWindow window;
  LemmaCheck lemma;
  std::int64_t homology_sum = 0;  // sum_{m<=D} (-1)^m b_m
  bool morse_holds = false;
  std::int64_t need = 0;          // lower bound for the counted orbits
};

struct BoundCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

enum class Verdict { consistent, refuted };

struct BoundReport {
  ResonanceResult resonance;
  bool mirrored = false;  // index-negative input, run on the inverted paths
  std::optional<JumpCertificate> certificate;
  std::optional<BoundSide> plus;
  std::optional<BoundSide> minus;
  std::int64_t window_homology = 0;  // sum of b_m over the excluded degrees
  std::int64_t implied_bound = 0;
  std::int64_t implied_nonhyp = 0;
  std::int64_t r_B = 0;
  std::int64_t r_nonhyp = 0;
  std::int64_t orbit_count = 0;
  std::int64_t nonhyperbolic_count = 0;
  std::vector<BoundCheck> checks;
  Verdict verdict = Verdict::refuted;
  std::string first_violation;
};

BoundReport verify_theorem_bound(const SystemModel& system, const BoundOptions& options = {});

// Index-negative systems seen through inverted paths.
SystemModel mirror_system(const SystemModel& system);

// Ellipsoid E(a_1, ..., a_{n+1}) in C^{n+1}: orbit j has the loop winding 1 and
// rotations a_j / a_i for i != j. Throws InvalidInput on non-positive or
// repeated weights, DegenerateIterate when a ratio degenerates below
// nondeg_bound.
SystemModel ellipsoid_system(const std::vector<Rational>& weights, std::int64_t nondeg_bound = 1);

// Weights for which a common jump shows up early: a_i = 1 / B_i with
// B_i = W V p_i + V j_i + W t_i, p and j multiples of 2(n + 1), sum j = sum t = 0,
// V >> W^2. Deterministic in the seed.
std::vector<Rational> near_resonant_weights(int n, std::uint64_t seed);

const char* verdict_name(Verdict v);

}  // namespace reeb
