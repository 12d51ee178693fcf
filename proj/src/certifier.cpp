#include "reeb/certifier.hpp"

#include <algorithm>
#include <sstream>

#include "reeb/errors.hpp"

namespace reeb {

namespace mp = boost::multiprecision;

namespace {

int sign_of_parity(std::int64_t mu) { return mu % 2 == 0 ? 1 : -1; }

// gamma^2 is good iff the hyperbolic slopes sum to an even number.
bool second_iterate_good(const PathModel& path) {
  std::int64_t parity = 0;
  for (std::int64_t h : path.hyperbolic) parity ^= (h & 1);
  return parity == 0;
}

PathModel extend(const PathModel& path, std::int64_t upto) {
  if (upto <= path.nondeg_bound) return path;
  return validate_path(path, upto);
}

std::int64_t ceil_to_i64(const Rational& x) { return to_int64(ceil(x)); }

// First good iterate of some orbit whose index is excluded by the hypothesis
// (0 for odd n, -1, 0, 1 for even n). Beyond mean index n + 2 every index
// is at least 2, so a finite range suffices.
std::optional<std::string> index_condition_violation(const SystemModel& system) {
  const std::int64_t n = system.base.n;
  const bool even = n % 2 == 0;
  for (const OrbitModel& orbit : system.orbits) {
    const Rational mean = mean_index(orbit.path, 1);
    if (mean <= 0) continue;
    const std::int64_t horizon = ceil_to_i64(Rational(n + 2) / mean);
    PathModel path;
    try {
      path = extend(orbit.path, horizon);
    } catch (const DegenerateIterate& e) {
      throw ValidationError("orbit " + orbit.label + ": " + e.what());
    }
    for (std::int64_t k = 1; k <= horizon; ++k) {
      if (!is_good(path, k)) continue;
      const std::int64_t mu = cz_index(path, k);
      if (mu == 0 || (even && (mu == 1 || mu == -1))) {
        return "orbit " + orbit.label + ": good iterate " + std::to_string(k) + " has index " +
               std::to_string(mu);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

const std::set<std::string>& flag_vocabulary() {
  static const std::set<std::string> vocab{"no-index-0",     "no-index-0-pm1", "index-positive",
                                           "index-negative", "fillable-F",     "non-fillable-NF"};
  return vocab;
}

void validate_system(const SystemModel& system) {
  try {
    validate_base(system.base);
  } catch (const InvalidInput& e) {
    throw ValidationError(std::string("base: ") + e.what());
  }
  std::set<std::string> labels;
  for (const OrbitModel& orbit : system.orbits) {
    if (!labels.insert(orbit.label).second) {
      throw ValidationError("duplicate orbit label '" + orbit.label + "'");
    }
    if (orbit.period <= 0) throw ValidationError("orbit " + orbit.label + ": period must be positive");
    if (orbit.path.half_dim() != system.base.n) {
      throw ValidationError("orbit " + orbit.label + " has " +
                            std::to_string(orbit.path.half_dim()) + " blocks, base has n = " +
                            std::to_string(system.base.n));
    }
    const Rational mean = mean_index(orbit.path, 1);
    const bool ok = system.index_sign == IndexSign::positive ? mean > 0 : mean < 0;
    if (!ok) {
      throw ValidationError("orbit " + orbit.label + " has mean index " + to_string(mean) +
                            ", against the declared index sign");
    }
  }
  for (const std::string& flag : system.flags) {
    if (!flag_vocabulary().count(flag)) throw ValidationError("unknown flag '" + flag + "'");
  }
  if (system.flags.count("index-positive") && system.flags.count("index-negative")) {
    throw ValidationError("flags index-positive and index-negative exclude each other");
  }
  if ((system.flags.count("index-positive") && system.index_sign != IndexSign::positive) ||
      (system.flags.count("index-negative") && system.index_sign != IndexSign::negative)) {
    throw ValidationError("index sign flag disagrees with index_sign");
  }
  if (system.flags.count("fillable-F") && system.flags.count("non-fillable-NF")) {
    throw ValidationError("flags fillable-F and non-fillable-NF exclude each other");
  }
}

int local_euler(const OrbitModel& orbit, std::int64_t k) {
  if (!is_good(orbit.path, k)) return 0;
  return sign_of_parity(cz_index(orbit.path, k));
}

Rational mean_local_euler(const OrbitModel& orbit) {
  const Rational sign(sign_of_parity(cz_index(orbit.path, 1)));
  return second_iterate_good(orbit.path) ? sign : sign / 2;
}

ResonanceResult resonance_check(const SystemModel& system) {
  ResonanceResult out;
  for (const OrbitModel& orbit : system.orbits) {
    const Rational mean = mean_index(orbit.path, 1);
    if (mean == 0) throw ZeroMeanIndex("orbit " + orbit.label + " has mean index 0");
    out.lhs += mean_local_euler(orbit) / mean;
  }
  out.rhs = mean_euler_char(system.base);
  out.residual = out.lhs - out.rhs;
  out.passed = out.residual == 0;
  return out;
}

std::int64_t ell0(const SystemModel& system) {
  const std::int64_t n = system.base.n;
  std::int64_t out = 1;
  for (const OrbitModel& orbit : system.orbits) {
    const Rational mean = mean_index(orbit.path, 1);
    if (mean == 0) throw ZeroMeanIndex("orbit " + orbit.label + " has mean index 0");
    if (mean < 0) throw HypothesisViolated("orbit " + orbit.label + " has negative mean index");
    out = std::max(out, ceil_to_i64(Rational(4 * n + 1) / mean));
  }
  return out;
}

const char* class_name(IterateClass c) {
  switch (c) {
    case IterateClass::A: return "A";
    case IterateClass::B1: return "B1";
    case IterateClass::B2: return "B2";
    case IterateClass::C1: return "C1";
    case IterateClass::C2: return "C2";
    case IterateClass::D: return "D";
  }
  return "?";
}

MorseWindow morse_window(const SystemModel& system, std::int64_t d,
                         const std::vector<std::int64_t>& k, std::int64_t ell0) {
  if (k.size() != system.orbits.size()) {
    throw InvalidInput("jump has " + std::to_string(k.size()) + " entries for " +
                       std::to_string(system.orbits.size()) + " orbits");
  }
  if (ell0 < 1) throw InvalidInput("ell0 must be positive");
  const std::int64_t n = system.base.n;
  const bool odd = n % 2 == 1;
  MorseWindow w;
  w.d = d;
  w.top = odd ? d : d + 1;
  const std::int64_t breakpoint = odd ? 0 : -1;
  const std::int64_t threshold = odd ? 0 : 1;
  const std::int64_t excl_lo = odd ? d : d - 1;
  const std::int64_t excl_hi = odd ? d : d + 1;
  for (std::int64_t m = excl_lo; m <= excl_hi; ++m) w.counts_near_d[m] = 0;

  for (std::size_t i = 0; i < system.orbits.size(); ++i) {
    const OrbitModel& orbit = system.orbits[i];
    const std::int64_t ki = k[i];
    const std::string who = "orbit " + orbit.label;
    if (ki <= ell0) {
      throw CertificateMismatch(who + ": k=" + std::to_string(ki) + " does not exceed ell0");
    }
    const Rational mean = mean_index(orbit.path, 1);
    if (mean <= 0) throw HypothesisViolated(who + " has non-positive mean index");
    // Past this iterate the index exceeds D since mu > mean - n.
    const std::int64_t horizon = to_int64(floor(Rational(w.top + n) / mean));
    const std::int64_t cap = max_certifiable_bound(orbit.path);
    const std::int64_t need = std::max(ki + ell0, horizon);
    if (cap < need) {
      throw CertificateMismatch(who + ": iterates up to " + std::to_string(need) +
                                " are needed but only " + std::to_string(cap) +
                                " can be certified");
    }
    const std::int64_t last = std::max(need, std::min(ki + 2 * ell0, cap));
    const PathModel path = extend(orbit.path, last);

    std::vector<std::int64_t> mu(static_cast<std::size_t>(last) + 1);
    std::vector<char> good(static_cast<std::size_t>(last) + 1);
    for (std::int64_t l = 1; l <= last; ++l) {
      mu[l] = cz_index(path, l);
      good[l] = is_good(path, l);
    }

    for (std::int64_t l = 1; l <= ell0; ++l) {
      if (mu[ki - l] != d - mu[l]) {
        throw CertificateMismatch(who + ": mu(k-" + std::to_string(l) + ")=" +
                                  std::to_string(mu[ki - l]) + " but d-mu(l)=" +
                                  std::to_string(d - mu[l]));
      }
      if (mu[ki + l] != d + mu[l]) {
        throw CertificateMismatch(who + ": mu(k+" + std::to_string(l) + ")=" +
                                  std::to_string(mu[ki + l]) + " but d+mu(l)=" +
                                  std::to_string(d + mu[l]));
      }
    }
    if (std::abs(mu[ki] - d) > n) {
      throw CertificateMismatch(who + ": |mu(gamma^k) - d| = " + std::to_string(std::abs(mu[ki] - d)) +
                                " exceeds n");
    }

    OrbitWindow ow;
    ow.k = ki;
    ow.mu_k = mu[ki];
    ow.good_k = good[ki];
    ow.last_iterate = last;
    for (IterateClass c : {IterateClass::A, IterateClass::B1, IterateClass::B2, IterateClass::C1,
                           IterateClass::C2, IterateClass::D}) {
      ow.class_sizes[c] = 0;
    }

    for (std::int64_t l = 1; l <= ki; ++l) {
      if (good[l]) w.euler_sum += sign_of_parity(mu[l]);
    }
    for (std::int64_t l = 1; l <= horizon; ++l) {
      if (good[l] && mu[l] <= w.top) w.method_a += sign_of_parity(mu[l]);
    }
    for (std::int64_t l = 1; l <= last; ++l) {
      if (!good[l]) continue;
      if (mu[l] >= excl_lo && mu[l] <= excl_hi) {
        ++w.counts_near_d[mu[l]];
        if (l != ki) {
          w.placement_violations.push_back(who + ": good iterate " + std::to_string(l) +
                                           " has index " + std::to_string(mu[l]) + " next to d");
        }
      }
    }

    for (std::int64_t l = 1; l <= last; ++l) {
      if (l == ki) continue;
      IterateClass c;
      if (l < ki - ell0) {
        c = IterateClass::A;
      } else if (l < ki) {
        c = mu[ki - l] >= breakpoint ? IterateClass::B1 : IterateClass::B2;
      } else if (l <= ki + ell0) {
        c = mu[l - ki] >= breakpoint ? IterateClass::C1 : IterateClass::C2;
      } else {
        c = IterateClass::D;
      }
      ++ow.class_sizes[c];
      if (!good[l]) continue;
      const bool below = c == IterateClass::A || c == IterateClass::B1 || c == IterateClass::C2;
      if (below != (mu[l] <= w.top)) {
        w.placement_violations.push_back(who + ": good iterate " + std::to_string(l) + " in class " +
                                         class_name(c) + " has index " + std::to_string(mu[l]) +
                                         ", D=" + std::to_string(w.top));
      }
    }

    for (std::int64_t l = 1; l <= ell0; ++l) {
      if (mu[l] >= breakpoint) continue;
      const bool even = mu[l] % 2 == 0;
      if (good[ki + l]) ++(even ? w.c_e_plus : w.c_o_plus);
      if (good[ki - l]) ++(even ? w.c_e_minus : w.c_o_minus);
    }

    if (good[ki]) {
      const std::int64_t diff = mu[ki] - d;
      const bool even = mu[ki] % 2 == 0;
      if (diff > threshold) {
        ++(even ? w.r_e_plus : w.r_o_plus);
        if (even != odd) w.counted_plus.push_back(i);
      }
      if (-diff > threshold) {
        ++(even ? w.r_e_minus : w.r_o_minus);
        if (even != odd) w.counted_minus.push_back(i);
      }
    }
    w.orbits.push_back(std::move(ow));
  }
  w.method_b = w.euler_sum - (w.r_e_plus - w.r_o_plus);
  return w;
}

SystemModel mirror_system(const SystemModel& system) {
  SystemModel out = system;
  for (OrbitModel& orbit : out.orbits) orbit.path = invert(orbit.path);
  out.index_sign =
      system.index_sign == IndexSign::positive ? IndexSign::negative : IndexSign::positive;
  const bool pos = out.flags.erase("index-positive") > 0;
  const bool neg = out.flags.erase("index-negative") > 0;
  if (pos) out.flags.insert("index-negative");
  if (neg) out.flags.insert("index-positive");
  return out;
}

const char* verdict_name(Verdict v) {
  return v == Verdict::consistent ? "CONSISTENT" : "REFUTED";
}

namespace {

struct Homology {
  const BaseManifold* base;
  bool mirrored;
  std::int64_t operator()(std::int64_t m) const {
    return mirrored ? hc_rank(*base, -m) : hc_rank(*base, m);
  }
  // sum_{m <= top} (-1)^m b_m; b_m vanishes below -n in both orientations
  std::int64_t alternating_sum(std::int64_t top) const {
    std::int64_t sum = 0;
    for (std::int64_t m = -base->n - 1; m <= top; ++m) {
      const std::int64_t b = (*this)(m);
      sum += (m % 2 == 0) ? b : -b;
    }
    return sum;
  }
};

void finish(BoundReport& report) {
  report.verdict = Verdict::consistent;
  report.first_violation.clear();
  for (const BoundCheck& c : report.checks) {
    if (!c.passed) {
      report.verdict = Verdict::refuted;
      report.first_violation = c.name + ": " + c.detail;
      return;
    }
  }
}

std::string str(std::int64_t v) { return std::to_string(v); }

}  // namespace

BoundReport verify_theorem_bound(const SystemModel& input, const BoundOptions& options) {
  validate_system(input);
  BoundReport report;
  report.mirrored = input.index_sign == IndexSign::negative;
  const SystemModel system = report.mirrored ? mirror_system(input) : input;
  if (auto violation = index_condition_violation(system)) {
    throw ValidationError("index hypothesis violated: " + *violation);
  }
  const BaseManifold& base = system.base;
  const std::int64_t n = base.n;
  const bool odd = n % 2 == 1;
  const Homology h{&base, report.mirrored};
  report.r_B = r_bound(base);
  report.r_nonhyp = r_nonhyp_bound(base);
  report.orbit_count = static_cast<std::int64_t>(system.orbits.size());
  for (const OrbitModel& o : system.orbits) {
    if (!o.path.is_hyperbolic()) ++report.nonhyperbolic_count;
  }

  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    report.checks.push_back({name, ok, detail});
    return ok;
  };

  report.resonance = resonance_check(system);
  if (!check("resonance", report.resonance.passed,
             "sum mean_chi/mean_index = " + to_string(report.resonance.lhs) +
                 ", mean Euler characteristic = " + to_string(report.resonance.rhs))) {
    finish(report);
    return report;
  }
  if (system.orbits.empty()) {
    check("orbits", false, "empty system");
    finish(report);
    return report;
  }

  const Rational chi = mean_euler_char(base);
  JumpParams params;
  params.divisor = 2 * base.chern_min * std::max<std::int64_t>(1, options.divisor_multiple);
  if (options.eta) {
    params.eta = *options.eta;
  } else {
    params.eta = Rational(1, 10);
    if (chi != 0) params.eta = std::min(params.eta, Rational(1) / (2 * mp::abs(chi)));
  }
  params.ell0 = std::max(ell0(system), options.ell0);
  params.search_bound = options.search_bound;
  params.workers = options.workers;
  std::vector<PathModel> paths;
  for (const OrbitModel& o : system.orbits) paths.push_back(o.path);
  const JumpCertificate cert = find_common_jump(paths, params, options.min_k1);
  report.certificate = cert;

  auto side = [&](std::int64_t d, const std::vector<std::int64_t>& k) {
    BoundSide s;
    s.d = d;
    s.k = k;
    s.window = morse_window(system, d, k, params.ell0);
    s.lemma.iterate_sum = s.window.euler_sum;
    for (std::size_t i = 0; i < k.size(); ++i) {
      s.lemma.mean_sum += mean_local_euler(system.orbits[i]) * k[i];
    }
    s.lemma.d_chi = chi * d;
    const Rational sv(Integer(d), Integer(2 * base.chern_min));
    s.lemma.s_chi = sv * base.euler_char() * (odd ? -1 : 1);
    s.lemma.holds = Rational(s.lemma.iterate_sum) == s.lemma.mean_sum &&
                    s.lemma.mean_sum == s.lemma.d_chi && s.lemma.d_chi == s.lemma.s_chi;
    s.homology_sum = h.alternating_sum(s.window.top);
    const std::int64_t diff = s.window.method_a - s.homology_sum;
    s.morse_holds = (s.window.top % 2 == 0) ? diff >= 0 : diff <= 0;
    s.need = odd ? s.homology_sum - s.window.euler_sum : s.window.euler_sum - s.homology_sum;
    return s;
  };
  report.plus = side(cert.d_plus, cert.k_plus);
  report.minus = side(cert.d_minus, cert.k_minus);
  const BoundSide& p = *report.plus;
  const BoundSide& q = *report.minus;

  bool ok = true;
  for (const BoundSide* s : {&p, &q}) {
    const std::string tag = s == &p ? " (d=" + str(s->d) + ")" : " (d'=" + str(s->d) + ")";
    ok = ok && check("lemma identity" + tag, s->lemma.holds,
                     "iterate sum " + str(s->lemma.iterate_sum) + ", sum k chi_hat " +
                         to_string(s->lemma.mean_sum) + ", d chi " + to_string(s->lemma.d_chi) +
                         ", s chi(B) " + to_string(s->lemma.s_chi));
  }
  for (const BoundSide* s : {&p, &q}) {
    const std::string tag = " (d=" + str(s->d) + ")";
    ok = ok && check("morse cross-check" + tag, s->window.method_a == s->window.method_b,
                     "enumeration " + str(s->window.method_a) + ", closed form " +
                         str(s->window.method_b));
    ok = ok && check("iterate placement" + tag, s->window.placement_violations.empty(),
                     s->window.placement_violations.empty() ? ""
                                                            : s->window.placement_violations.front());
    ok = ok && check("morse inequality" + tag, s->morse_holds,
                     "sum (-1)^m c_m = " + str(s->window.method_a) + ", sum (-1)^m b_m = " +
                         str(s->homology_sum) + ", D=" + str(s->window.top));
  }
  if (!ok) {
    finish(report);
    return report;
  }

  // The second jump mirrors the first around d, so the orbits above d' are
  // those below d.
  const MorseWindow& w = p.window;
  const MorseWindow& w2 = q.window;
  check("reflection pairing",
        w.r_e_minus == w2.r_e_plus && w.r_o_minus == w2.r_o_plus && w.r_e_plus == w2.r_e_minus &&
            w.r_o_plus == w2.r_o_minus,
        "r(d) = (" + str(w.r_e_plus) + "," + str(w.r_o_plus) + "," + str(w.r_e_minus) + "," +
            str(w.r_o_minus) + "), r(d') = (" + str(w2.r_e_plus) + "," + str(w2.r_o_plus) + "," +
            str(w2.r_e_minus) + "," + str(w2.r_o_minus) + ")");
  const std::int64_t counted_plus = static_cast<std::int64_t>(w.counted_plus.size());
  const std::int64_t counted_minus = static_cast<std::int64_t>(w.counted_minus.size());
  const char* family = odd ? "r^o" : "r^e";
  check("counted orbits above d", counted_plus >= p.need,
        std::string(family) + "_+ = " + str(counted_plus) + ", need " + str(p.need));
  check("counted orbits below d", counted_minus >= q.need,
        std::string(family) + "_- = " + str(counted_minus) + ", need " + str(q.need));

  // Degrees the counted orbits cannot reach: d, or d - 1, d, d + 1.
  std::int64_t window = 0;
  std::int64_t window_off_d = 0;
  bool weak_morse = true;
  std::string weak_detail;
  for (const auto& [m, count] : w.counts_near_d) {
    const std::int64_t b = h(m);
    window += b;
    if (m != w.d) window_off_d += b;
    if (count < b && weak_morse) {
      weak_morse = false;
      weak_detail = "degree " + str(m) + ": " + str(count) + " good orbits, rank " + str(b);
    }
  }
  report.window_homology = window;
  check("homology near d", weak_morse, weak_detail);

  report.implied_bound = p.need + q.need + window;
  report.implied_nonhyp = p.need + q.need + window_off_d;

  std::set<std::size_t> witnesses(w.counted_plus.begin(), w.counted_plus.end());
  witnesses.insert(w.counted_minus.begin(), w.counted_minus.end());
  for (std::size_t i = 0; i < w.orbits.size(); ++i) {
    const OrbitWindow& ow = w.orbits[i];
    if (ow.good_k && ow.mu_k != w.d && ow.mu_k >= w.d - 1 && ow.mu_k <= w.d + 1 && !odd) {
      witnesses.insert(i);
    }
  }
  std::string hyperbolic_witness;
  for (std::size_t i : witnesses) {
    if (system.orbits[i].path.is_hyperbolic()) hyperbolic_witness = system.orbits[i].label;
  }
  check("non-hyperbolic witness", hyperbolic_witness.empty(),
        "hyperbolic orbit " + hyperbolic_witness + " counted away from d");
  check("multiplicity", report.orbit_count >= report.implied_bound,
        str(report.orbit_count) + " orbits, implied bound " + str(report.implied_bound));
  check("non-hyperbolic multiplicity", report.nonhyperbolic_count >= report.implied_nonhyp,
        str(report.nonhyperbolic_count) + " non-hyperbolic orbits, implied bound " +
            str(report.implied_nonhyp));
  finish(report);
  return report;
}

}  // namespace reeb
