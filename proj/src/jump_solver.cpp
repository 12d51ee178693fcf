#include "reeb/jump_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "reeb/errors.hpp"

namespace reeb {

namespace mp = boost::multiprecision;

namespace {

using i128 = __int128;
constexpr std::int64_t kMaxI64 = std::numeric_limits<std::int64_t>::max();

bool fits_i64(const Integer& x) {
  return x <= kMaxI64 && x >= std::numeric_limits<std::int64_t>::min();
}

// A rotation number prepared for fast ||k lambda|| tests. When numerator and
// denominator fit in 64 bits the test is exact integer arithmetic in 128 bits.
struct Rot {
  Rational value;
  bool fast = false;
  std::int64_t p = 0;  // numerator mod q, in [0, q)
  std::int64_t q = 1;
};

struct Tol {
  Rational value;
  bool fast = false;
  std::int64_t a = 0;
  std::int64_t b = 1;
};

Rot make_rot(const Rational& r) {
  Rot out;
  out.value = r;
  const Integer& num = mp::numerator(r);
  const Integer& den = mp::denominator(r);
  if (fits_i64(den)) {
    Integer p = num % den;
    if (p < 0) p += den;
    out.fast = true;
    out.p = p.convert_to<std::int64_t>();
    out.q = den.convert_to<std::int64_t>();
  }
  return out;
}

Tol make_tol(const Rational& t) {
  Tol out;
  out.value = t;
  if (fits_i64(mp::numerator(t)) && fits_i64(mp::denominator(t))) {
    out.fast = true;
    out.a = mp::numerator(t).convert_to<std::int64_t>();
    out.b = mp::denominator(t).convert_to<std::int64_t>();
  }
  return out;
}

// 0 < ||k lambda|| < t
bool near_integer(const Rot& r, std::int64_t k, const Tol& t) {
  if (r.fast && t.fast) {
    const i128 rem = static_cast<i128>(k % r.q) * r.p % r.q;
    if (rem == 0) return false;
    const i128 dist = std::min<i128>(rem, r.q - rem);
    return dist * t.b < static_cast<i128>(t.a) * r.q;
  }
  const Rational dist = dist_to_int(r.value * k);
  return dist != 0 && dist < t.value;
}

// Tolerance per path and rotation block.
using Tols = std::vector<std::vector<Tol>>;

struct PathData {
  Rational mean;
  double mean_approx = 0;
  std::vector<Rot> rots;
  bool hyperbolic = false;
  std::int64_t max_cert = kMaxI64;
};

std::int64_t first_multiple_above(std::int64_t x, std::int64_t n) {
  // smallest positive multiple of n strictly greater than x
  if (x < 0) return n;
  return (x / n + 1) * n;
}

class Solver {
 public:
  Solver(const std::vector<PathModel>& paths, const JumpParams& params)
      : paths_(paths), params_(params) {
    for (const PathModel& p : paths) {
      PathData data;
      data.mean = mean_index(p, 1);
      data.mean_approx = to_double(data.mean);
      for (const Rational& l : p.elliptic) data.rots.push_back(make_rot(l));
      data.hyperbolic = p.is_hyperbolic();
      data.max_cert = max_certifiable_bound(p);
      data_.push_back(std::move(data));
    }
    const auto eps = solver_epsilon(paths, params);
    eps_ = eps.value_or(Rational(1));
    const Tol t = make_tol(eps_);
    for (const PathData& d : data_) eps_tols_.emplace_back(d.rots.size(), t);
  }

  JumpCertificate run(std::int64_t min_k1) {
    const std::int64_t n = params_.divisor;
    const std::int64_t bound = params_.search_bound;
    std::int64_t k1 = first_multiple_above(std::max(min_k1, params_.ell0), n);
    const std::vector<std::int64_t> lower(paths_.size(), params_.ell0);
    std::vector<std::int64_t> upper;
    for (const PathData& d : data_) upper.push_back(cap(d.max_cert, params_.ell0));

    JumpCertificate found;
    const int workers = std::max(1, params_.workers);
    if (workers == 1) {
      for (; k1 <= bound; k1 += n) {
        if (try_plus(k1, found)) return found;
        if (k1 > bound - n) break;
      }
    } else {
      // Each worker prefilters a disjoint block; hits are then processed in
      // ascending order so the answer matches the sequential scan.
      const std::int64_t block = 8192;
      while (k1 <= bound) {
        std::vector<std::vector<std::int64_t>> hits(workers);
        std::vector<std::thread> pool;
        std::vector<std::int64_t> starts(workers);
        for (int w = 0; w < workers; ++w) {
          const i128 s = static_cast<i128>(k1) + static_cast<i128>(w) * block * n;
          starts[w] = s > bound ? bound + 1 : static_cast<std::int64_t>(s);
        }
        for (int w = 0; w < workers; ++w) {
          pool.emplace_back([&, w] {
            std::vector<std::vector<std::int64_t>> scratch;
            std::int64_t k = starts[w];
            for (std::int64_t step = 0; step < block && k <= bound; ++step) {
              if (cheap_lists(k, eps_tols_, lower, upper, scratch)) hits[w].push_back(k);
              if (k > bound - n) break;
              k += n;
            }
          });
        }
        for (auto& t : pool) t.join();
        for (const auto& list : hits) {
          for (std::int64_t k : list) {
            if (try_plus(k, found)) return found;
          }
        }
        const i128 next = static_cast<i128>(k1) + static_cast<i128>(workers) * block * n;
        if (next > bound) break;
        k1 = static_cast<std::int64_t>(next);
      }
    }
    std::ostringstream msg;
    msg << "no common index jump with k1 in (" << std::max(min_k1, params_.ell0) << ", "
        << bound << "] divisible by " << n;
    throw SearchExhausted(msg.str());
  }

 private:
  static std::int64_t cap(std::int64_t max_cert, std::int64_t ell0) {
    return max_cert == kMaxI64 ? kMaxI64 : max_cert - ell0;
  }

  // Cheap stage: candidate multiples of N per path, from a floating-point
  // window around k1 * mean_1 / mean_i plus the exact rotation test. May keep
  // false positives at the window edge; never drops a true candidate.
  bool cheap_lists(std::int64_t k1, const Tols& tol, const std::vector<std::int64_t>& lower,
                   const std::vector<std::int64_t>& upper,
                   std::vector<std::vector<std::int64_t>>& out) const {
    out.assign(paths_.size(), {});
    if (k1 <= lower[0] || k1 > upper[0]) return false;
    for (std::size_t q = 0; q < data_[0].rots.size(); ++q) {
      if (!near_integer(data_[0].rots[q], k1, tol[0][q])) return false;
    }
    out[0].push_back(k1);
    const double x = static_cast<double>(k1) * data_[0].mean_approx;
    const double n = static_cast<double>(params_.divisor);
    for (std::size_t i = 1; i < paths_.size(); ++i) {
      const double mi = data_[i].mean_approx;
      const double center = x / mi;
      const double slack = 1e-9 * (1.0 + std::abs(center)) + 1e-9;
      const double lo = (x - 1.0 / 16) / mi - slack;
      const double hi = (x + 1.0 / 16) / mi + slack;
      auto m = static_cast<std::int64_t>(std::ceil(lo / n));
      const auto m_hi = static_cast<std::int64_t>(std::floor(hi / n));
      for (; m <= m_hi; ++m) {
        const std::int64_t k = m * params_.divisor;
        if (k <= lower[i] || k > upper[i]) continue;
        bool ok = true;
        for (std::size_t q = 0; q < data_[i].rots.size() && ok; ++q) {
          ok = near_integer(data_[i].rots[q], k, tol[i][q]);
        }
        if (ok) out[i].push_back(k);
      }
      if (out[i].empty()) return false;
    }
    return true;
  }

  // Exact filter on the 1/16 window.
  bool exact_window(std::int64_t k1, std::vector<std::vector<std::int64_t>>& lists) const {
    const Rational x1 = data_[0].mean * k1;
    const Rational width(1, 16);
    for (std::size_t i = 1; i < lists.size(); ++i) {
      auto& l = lists[i];
      l.erase(std::remove_if(l.begin(), l.end(),
                             [&](std::int64_t k) {
                               return mp::abs(x1 - data_[i].mean * k) >= width;
                             }),
              l.end());
      if (l.empty()) return false;
    }
    return true;
  }

  // Rounding conditions shared by both jumps: k * mean_i rounds to d with
  // error below eta, exactly d on hyperbolic paths.
  bool rounds_to(std::size_t i, std::int64_t k, const Integer& d) const {
    const Rational x = data_[i].mean * k;
    bool tie = false;
    if (nearest_integer(x, &tie) != d || tie) return false;
    if (mp::abs(x - Rational(d)) >= params_.eta) return false;
    if (data_[i].hyperbolic && x != Rational(d)) return false;
    return true;
  }

  std::optional<Integer> jump_value(std::int64_t k1) const {
    bool tie = false;
    Integer d = nearest_integer(data_[0].mean * k1, &tie);
    if (tie || d <= 0 || d % params_.divisor != 0) return std::nullopt;
    if (!rounds_to(0, k1, d)) return std::nullopt;
    return d;
  }

  template <typename Fn>
  static bool for_each_combo(const std::vector<std::vector<std::int64_t>>& lists, Fn&& fn) {
    std::vector<std::size_t> idx(lists.size(), 0);
    std::vector<std::int64_t> pick(lists.size());
    while (true) {
      for (std::size_t i = 0; i < lists.size(); ++i) pick[i] = lists[i][idx[i]];
      if (fn(pick)) return true;
      std::size_t pos = lists.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < lists[pos].size()) break;
        idx[pos] = 0;
        if (pos == 0) return false;
      }
      if (lists.empty()) return false;
    }
  }

  bool try_plus(std::int64_t k1, JumpCertificate& out) const {
    std::vector<std::int64_t> lower(paths_.size(), params_.ell0);
    std::vector<std::int64_t> upper;
    for (const PathData& d : data_) upper.push_back(cap(d.max_cert, params_.ell0));
    std::vector<std::vector<std::int64_t>> lists;
    if (!cheap_lists(k1, eps_tols_, lower, upper, lists)) return false;
    if (!exact_window(k1, lists)) return false;
    const auto d = jump_value(k1);
    if (!d) return false;
    for (std::size_t i = 1; i < lists.size(); ++i) {
      auto& l = lists[i];
      l.erase(std::remove_if(l.begin(), l.end(),
                             [&](std::int64_t k) { return !rounds_to(i, k, *d); }),
              l.end());
      if (l.empty()) return false;
    }
    return for_each_combo(lists, [&](const std::vector<std::int64_t>& k_plus) {
      return try_minus(k_plus, d->convert_to<std::int64_t>(), out);
    });
  }

  // Tolerances for the k' scan. A given delta applies to every block.
  // Otherwise block q of path i gets min(eps - e, e) with e = ||k+_i lambda_iq||:
  // the first keeps ||k- lambda|| below eps, the second puts k- lambda on the
  // other side of the integer, which is what the reflection identity needs.
  std::optional<Tols> minus_tols(const std::vector<std::int64_t>& k_plus) const {
    Tols out;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      out.emplace_back();
      for (const Rot& r : data_[i].rots) {
        Rational t;
        if (params_.delta) {
          t = *params_.delta;
        } else {
          const Rational e = dist_to_int(r.value * k_plus[i]);
          t = std::min<Rational>(eps_ - e, e);
        }
        if (t <= 0) return std::nullopt;
        out.back().push_back(make_tol(t));
      }
    }
    return out;
  }

  bool try_minus(const std::vector<std::int64_t>& k_plus, std::int64_t d_plus,
                 JumpCertificate& out) const {
    const auto delta_tols = minus_tols(k_plus);
    if (!delta_tols) return false;
    std::vector<std::int64_t> lower(paths_.size());
    std::vector<std::int64_t> upper(paths_.size());
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      lower[i] = k_plus[i] + params_.ell0;
      const std::int64_t c = cap(data_[i].max_cert, params_.ell0);
      upper[i] = c > kMaxI64 - k_plus[i] ? kMaxI64 : c + k_plus[i];
    }
    const std::int64_t n = params_.divisor;
    const std::int64_t bound = params_.search_bound;
    std::vector<std::vector<std::int64_t>> lists;
    for (std::int64_t k1 = lower[0] / n * n + n; k1 <= bound; k1 += n) {
      if (cheap_lists(k1, *delta_tols, lower, upper, lists) && exact_window(k1, lists)) {
        const bool hit = for_each_combo(lists, [&](const std::vector<std::int64_t>& k_prime) {
          return accept_minus(k_plus, d_plus, k_prime, out);
        });
        if (hit) return true;
      }
      if (k1 > bound - n) break;
    }
    return false;
  }

  bool accept_minus(const std::vector<std::int64_t>& k_plus, std::int64_t d_plus,
                    const std::vector<std::int64_t>& k_prime, JumpCertificate& out) const {
    std::vector<std::int64_t> k_minus(k_plus.size());
    for (std::size_t i = 0; i < k_plus.size(); ++i) k_minus[i] = k_prime[i] - k_plus[i];
    for (std::size_t i = 0; i < k_minus.size(); ++i) {
      for (std::size_t q = 0; q < data_[i].rots.size(); ++q) {
        if (!near_integer(data_[i].rots[q], k_minus[i], eps_tols_[i][q])) return false;
      }
    }
    const Rational x1 = data_[0].mean * k_minus[0];
    for (std::size_t i = 1; i < k_minus.size(); ++i) {
      if (mp::abs(x1 - data_[i].mean * k_minus[i]) >= Rational(1, 8)) return false;
    }
    const auto d = jump_value(k_minus[0]);
    if (!d) return false;
    for (std::size_t i = 1; i < k_minus.size(); ++i) {
      if (!rounds_to(i, k_minus[i], *d)) return false;
    }
    JumpCertificate cert;
    cert.d_plus = d_plus;
    cert.k_plus = k_plus;
    cert.d_minus = d->convert_to<std::int64_t>();
    cert.k_minus = k_minus;
    cert.params = params_;
    if (!verify_jump(paths_, cert).passed()) return false;
    out = std::move(cert);
    return true;
  }

  const std::vector<PathModel>& paths_;
  JumpParams params_;
  std::vector<PathData> data_;
  Rational eps_;
  Tols eps_tols_;
};

std::string join(const std::vector<std::int64_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

}  // namespace

void check_params(const JumpParams& params) {
  if (params.eta <= 0 || params.eta >= Rational(1, 2)) {
    throw InvalidInput("eta must satisfy 0 < eta < 1/2, got " + to_string(params.eta));
  }
  if (params.ell0 < 1) throw InvalidInput("ell0 must be positive");
  if (params.divisor < 1) throw InvalidInput("divisor must be positive");
  if (params.search_bound < 1) throw InvalidInput("search bound must be positive");
  if (params.delta && *params.delta <= 0) throw InvalidInput("delta must be positive");
}

std::optional<Rational> epsilon0(const std::vector<PathModel>& paths, std::int64_t ell0) {
  std::optional<Rational> best;
  for (const PathModel& p : paths) {
    for (std::size_t q = 0; q < p.elliptic.size(); ++q) {
      for (std::int64_t l = 1; l <= ell0; ++l) {
        const Rational dist = dist_to_int(p.elliptic[q] * l);
        if (dist == 0) {
          throw DegenerateIterate(q, l, "rotation " + to_string(p.elliptic[q]) +
                                            " is degenerate at iterate " + std::to_string(l));
        }
        if (!best || dist < *best) best = dist;
      }
    }
  }
  return best;
}

std::optional<Rational> solver_epsilon(const std::vector<PathModel>& paths,
                                       const JumpParams& params) {
  auto eps = epsilon0(paths, params.ell0);
  if (!eps) return std::nullopt;
  int max_dim = 0;
  std::int64_t blocks = 0;
  for (const PathModel& p : paths) {
    max_dim = std::max(max_dim, p.half_dim());
    blocks += static_cast<std::int64_t>(p.elliptic.size());
  }
  Rational out = *eps;
  out = std::min<Rational>(out, params.eta / (2 * max_dim));
  out = std::min(out, Rational(Integer(1), Integer(4 * blocks)));
  return out;
}

JumpCertificate find_common_jump(const std::vector<PathModel>& paths, const JumpParams& params,
                                 std::int64_t min_k1) {
  check_params(params);
  if (paths.empty()) throw InvalidInput("find_common_jump needs at least one path");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (mean_index(paths[i], 1) <= 0) {
      throw HypothesisViolated("path " + std::to_string(i) + " has mean index " +
                               to_string(mean_index(paths[i], 1)) + " <= 0");
    }
  }
  Solver solver(paths, params);
  return solver.run(min_k1);
}

bool JumpReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const JumpCheck& c) { return c.passed; });
}

std::string JumpReport::first_failure() const {
  for (const JumpCheck& c : checks) {
    if (!c.passed) return c.name + ": " + c.counterexample;
  }
  return "";
}

std::vector<PathModel> certified_paths(const std::vector<PathModel>& paths,
                                       const JumpCertificate& cert) {
  std::vector<PathModel> out;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::int64_t top = 0;
    if (i < cert.k_plus.size()) top = std::max(top, cert.k_plus[i]);
    if (i < cert.k_minus.size()) top = std::max(top, cert.k_minus[i]);
    const std::int64_t want = std::max(paths[i].nondeg_bound, top + cert.params.ell0);
    out.push_back(validate_path(paths[i], want));
  }
  return out;
}

JumpReport verify_jump(const std::vector<PathModel>& paths, const JumpCertificate& cert) {
  JumpReport report;
  const std::int64_t ell0 = cert.params.ell0;
  const std::int64_t n = cert.params.divisor;
  auto fail = [](JumpCheck& c, const std::string& why) {
    if (c.passed) {
      c.passed = false;
      c.counterexample = why;
    }
  };

  JumpCheck shape{"shape"};
  if (cert.k_plus.size() != paths.size() || cert.k_minus.size() != paths.size()) {
    fail(shape, "certificate has " + std::to_string(cert.k_plus.size()) + "/" +
                    std::to_string(cert.k_minus.size()) + " entries for " +
                    std::to_string(paths.size()) + " paths");
  }
  if (ell0 < 1 || n < 1) fail(shape, "ell0 and divisor must be positive");
  if (cert.d_plus <= 0 || cert.d_minus <= 0) fail(shape, "jump values must be positive");
  for (std::size_t i = 0; shape.passed && i < paths.size(); ++i) {
    for (std::int64_t k : {cert.k_plus[i], cert.k_minus[i]}) {
      if (k <= ell0) {
        fail(shape, "path " + std::to_string(i) + ": k=" + std::to_string(k) +
                        " does not exceed ell0=" + std::to_string(ell0));
      }
    }
  }
  report.checks.push_back(shape);

  JumpCheck divisible{"divisibility"};
  if (n >= 1) {
    if (cert.d_plus % n != 0) fail(divisible, "d+=" + std::to_string(cert.d_plus));
    if (cert.d_minus % n != 0) fail(divisible, "d-=" + std::to_string(cert.d_minus));
    for (std::int64_t k : cert.k_plus) {
      if (k % n != 0) fail(divisible, "k+=" + join(cert.k_plus));
    }
    for (std::int64_t k : cert.k_minus) {
      if (k % n != 0) fail(divisible, "k-=" + join(cert.k_minus));
    }
  }
  report.checks.push_back(divisible);

  JumpCheck nondeg{"nondegeneracy"};
  std::vector<PathModel> certified;
  if (shape.passed) {
    try {
      certified = certified_paths(paths, cert);
    } catch (const DegenerateIterate& e) {
      fail(nondeg, e.what());
    }
  } else {
    fail(nondeg, "not evaluated");
  }
  report.checks.push_back(nondeg);

  JumpCheck mean{"(i)"};
  JumpCheck recur{"(ii)"};
  JumpCheck reflect{"(iii)"};
  if (!nondeg.passed) {
    for (JumpCheck* c : {&mean, &recur, &reflect}) fail(*c, "not evaluated");
  } else {
    struct Side {
      const char* tag;
      std::int64_t d;
      const std::vector<std::int64_t>& k;
    };
    const Side sides[] = {{"+", cert.d_plus, cert.k_plus}, {"-", cert.d_minus, cert.k_minus}};
    for (const Side& s : sides) {
      for (std::size_t i = 0; i < certified.size(); ++i) {
        const PathModel& p = certified[i];
        const std::int64_t k = s.k[i];
        const Rational x = mean_index(p, k);
        bool tie = false;
        nearest_integer(x, &tie);
        if (tie) report.ambiguous_rounding = true;
        const std::string where = std::string("d") + s.tag + "=" + std::to_string(s.d) +
                                  ", path " + std::to_string(i) + ", k=" + std::to_string(k);
        if (mp::abs(x - Rational(s.d)) >= cert.params.eta) {
          fail(mean, where + ": mean index " + to_string(x));
        } else if (p.is_hyperbolic() &&
                   (x != Rational(s.d) || cz_index(p, k) != s.d)) {
          fail(mean, where + ": hyperbolic path needs mu = mean index = d, got mu=" +
                         std::to_string(cz_index(p, k)) + ", mean " + to_string(x));
        }
        for (std::int64_t step = 1; step <= ell0 && recur.passed; ++step) {
          for (std::int64_t l : {step, -step}) {
            const std::int64_t lhs = cz_index(p, k + l);
            const std::int64_t rhs = s.d + signed_iterate_index(p, l);
            if (lhs != rhs) {
              fail(recur, where + ", l=" + std::to_string(l) + ": mu(k+l)=" +
                              std::to_string(lhs) + ", d+mu(l)=" + std::to_string(rhs));
              break;
            }
          }
        }
      }
    }
    for (std::size_t i = 0; i < certified.size(); ++i) {
      const std::int64_t plus = cz_index(certified[i], cert.k_plus[i]) - cert.d_plus;
      const std::int64_t minus = cz_index(certified[i], cert.k_minus[i]) - cert.d_minus;
      if (minus != -plus) {
        fail(reflect, "path " + std::to_string(i) + ": mu(k+)-d+=" + std::to_string(plus) +
                          ", mu(k-)-d-=" + std::to_string(minus));
      }
    }
  }
  report.checks.push_back(mean);
  report.checks.push_back(recur);
  report.checks.push_back(reflect);
  return report;
}

}  // namespace reeb
