#include "reeb/serialize.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "reeb/errors.hpp"

namespace reeb {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) throw InvalidInput("unknown field '" + item.key() + "' in " + what);
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "' in " + what);
  return j.at(key);
}

std::int64_t get_int(const Json& j, const char* what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      return static_cast<std::int64_t>(v);
    }
  }
  throw InvalidInput(std::string(what) + " must be an integer");
}

Rational get_rational(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(get_int(j, what));
  throw InvalidInput(std::string(what) + " must be a \"p/q\" string or an integer");
}

std::vector<std::int64_t> get_int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be a list");
  std::vector<std::int64_t> out;
  for (const Json& x : j) out.push_back(get_int(x, what));
  return out;
}

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  const Rational r = parse_rational(s);
  if (boost::multiprecision::denominator(r) != 1) throw InvalidInput(what + " must be an integer");
  try {
    return to_int64(boost::multiprecision::numerator(r));
  } catch (const std::overflow_error&) {
    throw InvalidInput(what + " does not fit in 64 bits");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<std::int64_t> out;
  for (const std::string& x : split(s, ',')) out.push_back(parse_int(x, what));
  return out;
}

// Field lookup that rejects unknown and repeated keys.
std::map<std::string, std::string> record_map(const Record& record,
                                              std::initializer_list<const char*> allowed,
                                              const char* what) {
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : record) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InvalidInput("unknown field '" + key + "' in " + what);
    if (!out.emplace(key, value).second) {
      throw InvalidInput("repeated field '" + key + "' in " + what);
    }
  }
  return out;
}

const std::string& need(const std::map<std::string, std::string>& m, const char* key,
                        const char* what) {
  auto it = m.find(key);
  if (it == m.end()) throw InvalidInput(std::string("missing field '") + key + "' in " + what);
  return it->second;
}

const char* sign_name(MonotoneSign s) { return s == MonotoneSign::positive ? "positive" : "negative"; }

MonotoneSign parse_sign(const std::string& s) {
  if (s == "positive") return MonotoneSign::positive;
  if (s == "negative") return MonotoneSign::negative;
  throw InvalidInput("monotone_sign must be \"positive\" or \"negative\", got '" + s + "'");
}

}  // namespace

Json to_json(const PathModel& path) {
  Json j;
  j["loop_maslov"] = path.loop_maslov;
  j["elliptic"] = Json::array();
  for (const Rational& l : path.elliptic) j["elliptic"].push_back(to_string(l));
  j["hyperbolic"] = path.hyperbolic;
  j["nondeg_bound"] = path.nondeg_bound;
  return j;
}

PathModel path_from_json(const Json& j) {
  check_keys(j, {"loop_maslov", "elliptic", "hyperbolic", "nondeg_bound"}, "path");
  PathModel path;
  if (j.contains("loop_maslov")) path.loop_maslov = get_int(j.at("loop_maslov"), "loop_maslov");
  if (j.contains("elliptic")) {
    if (!j.at("elliptic").is_array()) throw InvalidInput("elliptic must be a list");
    for (const Json& x : j.at("elliptic")) path.elliptic.push_back(get_rational(x, "elliptic rotation"));
  }
  if (j.contains("hyperbolic")) path.hyperbolic = get_int_list(j.at("hyperbolic"), "hyperbolic slope");
  std::int64_t bound = 1;
  if (j.contains("nondeg_bound")) bound = get_int(j.at("nondeg_bound"), "nondeg_bound");
  return validate_path(path, bound);
}

Json to_json(const BaseManifold& base) {
  Json j;
  j["n"] = base.n;
  j["betti"] = base.betti;
  j["c_B"] = base.chern_min;
  j["monotone_sign"] = sign_name(base.monotone_sign);
  return j;
}

BaseManifold base_from_json(const Json& j) {
  check_keys(j, {"n", "betti", "c_B", "monotone_sign"}, "base");
  BaseManifold base;
  base.n = static_cast<int>(get_int(require(j, "n", "base"), "n"));
  base.betti = get_int_list(require(j, "betti", "base"), "betti");
  base.chern_min = get_int(require(j, "c_B", "base"), "c_B");
  if (j.contains("monotone_sign")) {
    if (!j.at("monotone_sign").is_string()) throw InvalidInput("monotone_sign must be a string");
    base.monotone_sign = parse_sign(j.at("monotone_sign").get<std::string>());
  }
  validate_base(base);
  return base;
}

Json to_json(const SystemModel& system) {
  Json j;
  j["orbits"] = Json::array();
  for (const OrbitModel& o : system.orbits) {
    j["orbits"].push_back({{"label", o.label}, {"path", to_json(o.path)}, {"period", to_string(o.period)}});
  }
  j["base"] = to_json(system.base);
  j["index_sign"] = system.index_sign == IndexSign::positive ? "positive" : "negative";
  j["flags"] = Json::array();
  for (const std::string& f : system.flags) j["flags"].push_back(f);
  return j;
}

SystemModel system_from_json(const Json& j) {
  check_keys(j, {"orbits", "base", "index_sign", "flags"}, "system");
  SystemModel system;
  const Json& orbits = require(j, "orbits", "system");
  if (!orbits.is_array()) throw InvalidInput("orbits must be a list");
  for (const Json& o : orbits) {
    check_keys(o, {"label", "path", "period"}, "orbit");
    OrbitModel orbit;
    const Json& label = require(o, "label", "orbit");
    if (!label.is_string()) throw InvalidInput("orbit label must be a string");
    orbit.label = label.get<std::string>();
    orbit.path = path_from_json(require(o, "path", "orbit"));
    if (o.contains("period")) orbit.period = get_rational(o.at("period"), "period");
    system.orbits.push_back(std::move(orbit));
  }
  system.base = base_from_json(require(j, "base", "system"));
  if (j.contains("index_sign")) {
    const Json& s = j.at("index_sign");
    if (s == "positive") {
      system.index_sign = IndexSign::positive;
    } else if (s == "negative") {
      system.index_sign = IndexSign::negative;
    } else {
      throw InvalidInput("index_sign must be \"positive\" or \"negative\"");
    }
  }
  if (j.contains("flags")) {
    if (!j.at("flags").is_array()) throw InvalidInput("flags must be a list");
    for (const Json& f : j.at("flags")) {
      if (!f.is_string()) throw InvalidInput("flags must be strings");
      system.flags.insert(f.get<std::string>());
    }
  }
  try {
    validate_system(system);
  } catch (const ValidationError& e) {
    throw InvalidInput(e.what());
  }
  return system;
}

Json to_json(const JumpCertificate& cert) {
  Json j;
  j["d_plus"] = cert.d_plus;
  j["k_plus"] = cert.k_plus;
  j["d_minus"] = cert.d_minus;
  j["k_minus"] = cert.k_minus;
  j["eta"] = to_string(cert.params.eta);
  j["ell0"] = cert.params.ell0;
  j["divisor"] = cert.params.divisor;
  return j;
}

JumpCertificate certificate_from_json(const Json& j) {
  const char* what = "certificate";
  check_keys(j, {"d_plus", "k_plus", "d_minus", "k_minus", "eta", "ell0", "divisor"}, what);
  JumpCertificate cert;
  cert.d_plus = get_int(require(j, "d_plus", what), "d_plus");
  cert.k_plus = get_int_list(require(j, "k_plus", what), "k_plus");
  cert.d_minus = get_int(require(j, "d_minus", what), "d_minus");
  cert.k_minus = get_int_list(require(j, "k_minus", what), "k_minus");
  cert.params.eta = get_rational(require(j, "eta", what), "eta");
  cert.params.ell0 = get_int(require(j, "ell0", what), "ell0");
  cert.params.divisor = get_int(require(j, "divisor", what), "divisor");
  return cert;
}

std::vector<PathModel> paths_from_json(const Json& j) {
  if (j.is_object() && j.contains("paths")) {
    check_keys(j, {"paths"}, "path list");
    if (!j.at("paths").is_array()) throw InvalidInput("paths must be a list");
    std::vector<PathModel> out;
    for (const Json& p : j.at("paths")) out.push_back(path_from_json(p));
    return out;
  }
  if (j.is_object() && j.contains("orbits")) {
    std::vector<PathModel> out;
    for (const OrbitModel& o : system_from_json(j).orbits) out.push_back(o.path);
    return out;
  }
  return {path_from_json(j)};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed structured text: ") + e.what());
  }
}

std::string render_records(const std::vector<Record>& records) {
  std::string out;
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (r) out += '\n';
    for (const auto& [key, value] : records[r]) out += key + "=" + value + "\n";
  }
  return out;
}

std::vector<Record> parse_records(std::string_view text) {
  std::vector<Record> out;
  Record current;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw InvalidInput("malformed record line '" + std::string(line) + "'");
      }
      current.emplace_back(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

Record to_record(const PathModel& path) {
  std::string elliptic;
  for (std::size_t i = 0; i < path.elliptic.size(); ++i) {
    if (i) elliptic += ',';
    elliptic += to_string(path.elliptic[i]);
  }
  return {{"loop_maslov", std::to_string(path.loop_maslov)},
          {"elliptic", elliptic},
          {"hyperbolic", join_ints(path.hyperbolic)},
          {"nondeg_bound", std::to_string(path.nondeg_bound)}};
}

PathModel path_from_record(const Record& record) {
  const auto m = record_map(record, {"loop_maslov", "elliptic", "hyperbolic", "nondeg_bound"}, "path");
  PathModel path;
  path.loop_maslov = parse_int(need(m, "loop_maslov", "path"), "loop_maslov");
  for (const std::string& x : split(need(m, "elliptic", "path"), ',')) {
    path.elliptic.push_back(parse_rational(x));
  }
  path.hyperbolic = parse_int_list(need(m, "hyperbolic", "path"), "hyperbolic");
  return validate_path(path, parse_int(need(m, "nondeg_bound", "path"), "nondeg_bound"));
}

Record to_record(const BaseManifold& base) {
  return {{"n", std::to_string(base.n)},
          {"betti", join_ints(base.betti)},
          {"c_B", std::to_string(base.chern_min)},
          {"monotone_sign", sign_name(base.monotone_sign)}};
}

BaseManifold base_from_record(const Record& record) {
  const auto m = record_map(record, {"n", "betti", "c_B", "monotone_sign"}, "base");
  BaseManifold base;
  base.n = static_cast<int>(parse_int(need(m, "n", "base"), "n"));
  base.betti = parse_int_list(need(m, "betti", "base"), "betti");
  base.chern_min = parse_int(need(m, "c_B", "base"), "c_B");
  base.monotone_sign = parse_sign(need(m, "monotone_sign", "base"));
  validate_base(base);
  return base;
}

Record to_record(const JumpCertificate& cert) {
  return {{"d_plus", std::to_string(cert.d_plus)},   {"k_plus", join_ints(cert.k_plus)},
          {"d_minus", std::to_string(cert.d_minus)}, {"k_minus", join_ints(cert.k_minus)},
          {"eta", to_string(cert.params.eta)},       {"ell0", std::to_string(cert.params.ell0)},
          {"divisor", std::to_string(cert.params.divisor)}};
}

JumpCertificate certificate_from_record(const Record& record) {
  const char* what = "certificate";
  const auto m = record_map(
      record, {"d_plus", "k_plus", "d_minus", "k_minus", "eta", "ell0", "divisor"}, what);
  JumpCertificate cert;
  cert.d_plus = parse_int(need(m, "d_plus", what), "d_plus");
  cert.k_plus = parse_int_list(need(m, "k_plus", what), "k_plus");
  cert.d_minus = parse_int(need(m, "d_minus", what), "d_minus");
  cert.k_minus = parse_int_list(need(m, "k_minus", what), "k_minus");
  cert.params.eta = parse_rational(need(m, "eta", what));
  cert.params.ell0 = parse_int(need(m, "ell0", what), "ell0");
  cert.params.divisor = parse_int(need(m, "divisor", what), "divisor");
  return cert;
}

JumpCertificate read_certificate(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return certificate_from_json(parse_json(text));
  }
  const auto records = parse_records(text);
  if (records.size() != 1) throw InvalidInput("a certificate file holds exactly one record");
  return certificate_from_record(records.front());
}

namespace {

std::string classes_string(const OrbitWindow& ow) {
  std::string out;
  for (const auto& [c, size] : ow.class_sizes) {
    if (!out.empty()) out += ',';
    out += std::string(class_name(c)) + ":" + std::to_string(size);
  }
  return out;
}

std::string key_of(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == ' ') {
      out += '_';
    } else if (c != '(' && c != ')' && c != '\'') {
      out += c;
    }
  }
  return out;
}

void side_fields(Record& r, const std::string& tag, const BoundSide& s) {
  const MorseWindow& w = s.window;
  auto add = [&](const std::string& key, const std::string& value) {
    r.emplace_back(tag + "." + key, value);
  };
  add("d", std::to_string(s.d));
  add("k", join_ints(s.k));
  add("D", std::to_string(w.top));
  add("morse_enumeration", std::to_string(w.method_a));
  add("morse_closed_form", std::to_string(w.method_b));
  add("homology_sum", std::to_string(s.homology_sum));
  add("need", std::to_string(s.need));
  add("lemma_iterate_sum", std::to_string(s.lemma.iterate_sum));
  add("lemma_mean_sum", to_string(s.lemma.mean_sum));
  add("lemma_d_chi", to_string(s.lemma.d_chi));
  add("lemma_s_chi", to_string(s.lemma.s_chi));
  add("r_e", std::to_string(w.r_e_plus) + "," + std::to_string(w.r_e_minus));
  add("r_o", std::to_string(w.r_o_plus) + "," + std::to_string(w.r_o_minus));
  add("c_e", std::to_string(w.c_e_plus) + "," + std::to_string(w.c_e_minus));
  add("c_o", std::to_string(w.c_o_plus) + "," + std::to_string(w.c_o_minus));
  for (std::size_t i = 0; i < w.orbits.size(); ++i) {
    add("classes." + std::to_string(i), classes_string(w.orbits[i]));
  }
}

}  // namespace

std::vector<Record> report_records(const BoundReport& report) {
  Record r;
  r.emplace_back("verdict", verdict_name(report.verdict));
  r.emplace_back("first_violation", report.first_violation);
  r.emplace_back("mirrored", report.mirrored ? "true" : "false");
  r.emplace_back("resonance_lhs", to_string(report.resonance.lhs));
  r.emplace_back("resonance_rhs", to_string(report.resonance.rhs));
  r.emplace_back("resonance_residual", to_string(report.resonance.residual));
  if (report.certificate) {
    for (auto& kv : to_record(*report.certificate)) r.push_back(kv);
  }
  if (report.plus) side_fields(r, "plus", *report.plus);
  if (report.minus) side_fields(r, "minus", *report.minus);
  r.emplace_back("orbit_count", std::to_string(report.orbit_count));
  r.emplace_back("nonhyperbolic_count", std::to_string(report.nonhyperbolic_count));
  r.emplace_back("window_homology", std::to_string(report.window_homology));
  r.emplace_back("implied_bound", std::to_string(report.implied_bound));
  r.emplace_back("implied_nonhyp", std::to_string(report.implied_nonhyp));
  r.emplace_back("r_B", std::to_string(report.r_B));
  r.emplace_back("r_nonhyp", std::to_string(report.r_nonhyp));
  for (const BoundCheck& c : report.checks) {
    r.emplace_back("check." + key_of(c.name), c.passed ? "pass" : "fail");
  }
  return {r};
}

std::string render_report_text(const BoundReport& report) {
  std::ostringstream out;
  out << "verdict: " << verdict_name(report.verdict) << "\n";
  if (!report.first_violation.empty()) out << "first violation: " << report.first_violation << "\n";
  if (report.mirrored) out << "index-negative input, analysed through the inverted paths\n";
  out << "resonance: " << to_string(report.resonance.lhs) << " vs "
      << to_string(report.resonance.rhs) << " (residual " << to_string(report.resonance.residual)
      << ")\n";
  if (report.certificate) {
    const JumpCertificate& c = *report.certificate;
    out << "jump: d=" << c.d_plus << " k=(" << join_ints(c.k_plus) << "), d'=" << c.d_minus
        << " k'=(" << join_ints(c.k_minus) << "), eta=" << to_string(c.params.eta)
        << " ell0=" << c.params.ell0 << " N=" << c.params.divisor << "\n";
  }
  for (const auto* side : {&report.plus, &report.minus}) {
    if (!*side) continue;
    const BoundSide& s = **side;
    const MorseWindow& w = s.window;
    out << "window at d=" << s.d << ": D=" << w.top << ", enumeration " << w.method_a
        << ", closed form " << w.method_b << ", homology " << s.homology_sum << ", need "
        << s.need << "\n";
    out << "  r^e=(" << w.r_e_plus << "," << w.r_e_minus << ") r^o=(" << w.r_o_plus << ","
        << w.r_o_minus << ") c^e=(" << w.c_e_plus << "," << w.c_e_minus << ") c^o=("
        << w.c_o_plus << "," << w.c_o_minus << ")\n";
    out << "  lemma: " << s.lemma.iterate_sum << " = " << to_string(s.lemma.mean_sum) << " = "
        << to_string(s.lemma.d_chi) << " = " << to_string(s.lemma.s_chi) << "\n";
  }
  if (report.plus) {
    out << "implied bound " << report.implied_bound << " (r_B = " << report.r_B
        << "), non-hyperbolic " << report.implied_nonhyp << " (r_nonhyp = " << report.r_nonhyp
        << "); orbits " << report.orbit_count << ", non-hyperbolic " << report.nonhyperbolic_count
        << "\n";
  }
  for (const BoundCheck& c : report.checks) {
    out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace reeb
