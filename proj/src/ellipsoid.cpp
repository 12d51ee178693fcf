#include <algorithm>
#include <random>

#include "reeb/certifier.hpp"
#include "reeb/errors.hpp"

namespace reeb {

SystemModel ellipsoid_system(const std::vector<Rational>& weights, std::int64_t nondeg_bound) {
  if (weights.size() < 2) throw InvalidInput("an ellipsoid needs at least two weights");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) throw InvalidInput("weights must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (weights[i] == weights[j]) {
        throw InvalidInput("weights must be pairwise distinct, " + to_string(weights[i]) +
                           " repeats");
      }
    }
  }
  SystemModel system;
  const int n = static_cast<int>(weights.size()) - 1;
  system.base = complex_projective(n);
  system.index_sign = IndexSign::positive;
  system.flags = {"index-positive", n % 2 == 1 ? "no-index-0" : "no-index-0-pm1", "fillable-F"};
  for (std::size_t j = 0; j < weights.size(); ++j) {
    OrbitModel orbit;
    orbit.label = "gamma_" + std::to_string(j + 1);
    orbit.period = weights[j];
    orbit.path.loop_maslov = 1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (i != j) orbit.path.elliptic.push_back(weights[j] / weights[i]);
    }
    orbit.path = validate_path(orbit.path, nondeg_bound);
    system.orbits.push_back(std::move(orbit));
  }
  return system;
}

namespace {

constexpr std::int64_t kMinCertifiable = 1'000'000'000'000;

// Planted jump k_j = N u_j rounds every rotation to within eps / 2 and the
// common value is divisible by N.
bool planted_jump_ok(const SystemModel& system, const std::vector<std::int64_t>& k,
                     std::int64_t divisor) {
  std::vector<PathModel> paths;
  for (const OrbitModel& o : system.orbits) paths.push_back(o.path);
  JumpParams params;
  params.ell0 = ell0(system);
  const auto eps0 = epsilon0(paths, params.ell0);
  if (!eps0 || *eps0 < Rational(1, 20)) return false;
  const Rational eps = *solver_epsilon(paths, params);
  std::optional<Integer> d;
  const Rational x0 = mean_index(paths[0], k[0]);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    if (k[j] <= params.ell0) return false;
    for (const Rational& l : paths[j].elliptic) {
      const Rational e = dist_to_int(l * k[j]);
      if (e == 0 || e >= eps / 2) return false;
    }
    const Rational x = mean_index(paths[j], k[j]);
    if (abs(x - x0) >= Rational(1, 16)) return false;
    const Integer dj = nearest_integer(x);
    if (abs(x - Rational(dj)) >= params.eta / 2) return false;
    if (d && *d != dj) return false;
    d = dj;
  }
  return *d % divisor == 0;
}

}  // namespace

std::vector<Rational> near_resonant_weights(int n, std::uint64_t seed) {
  if (n < 1 || n > 6) throw InvalidInput("near-resonant weights support 1 <= n <= 6");
  std::mt19937_64 rng(seed);
  const std::int64_t divisor = 2 * (n + 1);
  const std::size_t count = static_cast<std::size_t>(n) + 1;
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::int64_t> pool;
    for (std::int64_t u = 5; u <= 5 + 2 * static_cast<std::int64_t>(count) + 2; ++u) pool.push_back(u);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::int64_t> u(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    std::vector<std::int64_t> v(count), t(count);
    std::int64_t vs = 0, ts = 0;
    for (std::size_t i = 0; i + 1 < count; ++i) {
      v[i] = uniform(-2, 2);
      t[i] = uniform(-3, 3);
      vs += v[i];
      ts += t[i];
    }
    v.back() = -vs;
    t.back() = -ts;
    bool distinct = true;
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (v[i] * u[j] == v[j] * u[i]) distinct = false;
      }
    }
    if (!distinct) continue;
    const Integer w(uniform(10'000, 20'000));
    const Integer big_v(uniform(100'000'000'000, 200'000'000'000));
    std::vector<Rational> weights;
    std::vector<std::int64_t> planted;
    for (std::size_t i = 0; i < count; ++i) {
      const Integer b = w * big_v * divisor * u[i] + big_v * divisor * v[i] + w * t[i];
      weights.push_back(Rational(Integer(1), b));
      planted.push_back(divisor * u[i]);
    }
    SystemModel system;
    try {
      system = ellipsoid_system(weights, 1);
    } catch (const Error&) {
      continue;
    }
    // shared factors in B_i, B_j give small denominators, i.e. early degenerate iterates
    const bool certifiable = std::all_of(system.orbits.begin(), system.orbits.end(), [](const OrbitModel& o) {
      return max_certifiable_bound(o.path) >= kMinCertifiable;
    });
    if (certifiable && planted_jump_ok(system, planted, divisor)) return weights;
  }
  throw SearchExhausted("no near-resonant weights found for n = " + std::to_string(n));
}

}  // namespace reeb
