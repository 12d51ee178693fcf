#include "reeb/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <optional>
#include <sstream>

#include "reeb/certifier.hpp"
#include "reeb/errors.hpp"
#include "reeb/serialize.hpp"

namespace reeb::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string output = "text";
  std::string eta;
  std::optional<std::int64_t> ell0;
  std::optional<std::int64_t> divisor;
  std::int64_t search_bound = 10'000'000;
  std::int64_t min_k1 = 0;
  std::uint64_t seed = 1;
  int workers = 1;

  // index
  std::int64_t k_from = 1;
  std::int64_t k_to = 10;
  // jump
  bool verify = false;
  std::string certificate;
  int count = 1;
  // hc
  std::int64_t m_from = 0;
  std::int64_t m_to = 20;
  std::optional<int> cp;
  // bound
  bool deg = false;
  std::optional<std::int64_t> deg_n;
  std::optional<std::int64_t> deg_q;
  // ellipsoid
  std::string weights;
  std::optional<int> random_n;
  std::int64_t nondeg_bound = 1;
};

bool machine(const RunConfig& c) { return c.output == "machine"; }

Json load_json(const RunConfig& c, const char* what) {
  if (c.input.empty()) throw InvalidInput(std::string("--input is required for ") + what);
  return parse_json(read_file(c.input));
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string describe(const PathModel& p) {
  std::string e;
  for (std::size_t i = 0; i < p.elliptic.size(); ++i) e += (i ? "," : "") + to_string(p.elliptic[i]);
  return "loop_maslov=" + std::to_string(p.loop_maslov) + " elliptic=[" + e + "] hyperbolic=[" +
         join(p.hyperbolic) + "]";
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

JumpParams params_from(const RunConfig& c) {
  JumpParams p;
  if (!c.eta.empty()) p.eta = parse_rational(c.eta);
  p.ell0 = c.ell0.value_or(1);
  p.divisor = c.divisor.value_or(1);
  p.search_bound = c.search_bound;
  p.workers = c.workers;
  check_params(p);
  return p;
}

int cmd_index(const RunConfig& c, std::ostream& out) {
  const auto paths = paths_from_json(load_json(c, "index"));
  if (c.k_from < 1 || c.k_to < c.k_from) throw InvalidInput("need 1 <= --from <= --to");
  std::vector<Record> records;
  std::ostringstream text;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const PathModel p = validate_path(paths[i], std::max(paths[i].nondeg_bound, c.k_to));
    std::vector<std::vector<std::string>> rows{{"k", "mu", "mean_index", "good"}};
    for (std::int64_t k = c.k_from; k <= c.k_to; ++k) {
      const std::int64_t mu = cz_index(p, k);
      const Rational mean = mean_index(p, k);
      const bool good = is_good(p, k);
      rows.push_back({std::to_string(k), std::to_string(mu), to_string(mean), good ? "yes" : "no"});
      records.push_back({{"path", std::to_string(i)},
                         {"k", std::to_string(k)},
                         {"mu", std::to_string(mu)},
                         {"mean_index", to_string(mean)},
                         {"good", good ? "true" : "false"}});
    }
    text << "path " << i << ": " << describe(paths[i]) << "\n" << table(rows);
    if (i + 1 < paths.size()) text << "\n";
  }
  out << (machine(c) ? render_records(records) : text.str());
  return kOk;
}

void print_report(const JumpReport& report, bool as_machine, std::ostream& out) {
  if (as_machine) {
    Record r{{"verified", report.passed() ? "true" : "false"},
             {"ambiguous_rounding", report.ambiguous_rounding ? "true" : "false"}};
    for (const JumpCheck& check : report.checks) {
      r.emplace_back("check." + check.name, check.passed ? "pass" : "fail");
    }
    r.emplace_back("first_failure", report.first_failure());
    out << render_records({r});
    return;
  }
  for (const JumpCheck& check : report.checks) {
    out << "[" << (check.passed ? "ok" : "FAIL") << "] " << check.name;
    if (!check.passed) out << ": " << check.counterexample;
    out << "\n";
  }
  if (report.ambiguous_rounding) out << "warning: a mean index is exactly a half-integer\n";
  out << (report.passed() ? "certificate verified\n" : "certificate rejected\n");
}

int cmd_jump(const RunConfig& c, std::ostream& out) {
  const auto paths = paths_from_json(load_json(c, "jump"));
  if (c.verify) {
    if (c.certificate.empty()) throw InvalidInput("--verify needs --certificate FILE");
    const JumpCertificate cert = read_certificate(read_file(c.certificate));
    check_params(cert.params);
    const JumpReport report = verify_jump(paths, cert);
    print_report(report, machine(c), out);
    return report.passed() ? kOk : kFailed;
  }
  const JumpParams params = params_from(c);
  std::vector<Record> records;
  std::int64_t min_k1 = c.min_k1;
  for (int i = 0; i < std::max(1, c.count); ++i) {
    const JumpCertificate cert = find_common_jump(paths, params, min_k1);
    min_k1 = cert.k_plus.front();
    if (machine(c)) {
      records.push_back(to_record(cert));
    } else {
      out << "d+ = " << cert.d_plus << "  k+ = (" << join(cert.k_plus) << ")\n"
          << "d- = " << cert.d_minus << "  k- = (" << join(cert.k_minus) << ")\n"
          << "eta = " << to_string(cert.params.eta) << "  ell0 = " << cert.params.ell0
          << "  N = " << cert.params.divisor << "\n";
      if (i + 1 < c.count) out << "\n";
    }
  }
  if (machine(c)) out << render_records(records);
  return kOk;
}

int cmd_hc(const RunConfig& c, std::ostream& out) {
  const BaseManifold base = c.cp ? complex_projective(*c.cp) : base_from_json(load_json(c, "hc"));
  validate_base(base);
  if (c.m_to < c.m_from) throw InvalidInput("need --from <= --to");
  const Rational chi = mean_euler_char(base);
  // a window start beyond the base dimension in the direction of the tail
  const std::int64_t start = base.monotone_sign == MonotoneSign::positive
                                 ? base.n + 1
                                 : -base.n - 2 * base.chern_min;
  const Rational windowed = windowed_mean_euler_char(base, start);
  std::vector<Record> records;
  std::vector<std::vector<std::string>> rows{{"m", "rank"}};
  for (std::int64_t m = c.m_from; m <= c.m_to; ++m) {
    const std::int64_t r = hc_rank(base, m);
    rows.push_back({std::to_string(m), std::to_string(r)});
    records.push_back({{"m", std::to_string(m)}, {"rank", std::to_string(r)}});
  }
  const bool positive = base.monotone_sign == MonotoneSign::positive;
  records.push_back({{positive ? "chi_plus" : "chi_minus", to_string(chi)},
                     {"chi_windowed", to_string(windowed)},
                     {"derived", positive ? "false" : "true"}});
  if (machine(c)) {
    out << render_records(records);
  } else {
    out << table(rows);
    out << (positive ? "chi_+ = " : "chi_- (derived) = ") << to_string(chi)
        << "  windowed = " << to_string(windowed) << "\n";
    for (const std::string& w : hypothesis_warnings(base)) out << "warning: " << w << "\n";
  }
  return kOk;
}

int cmd_bound(const RunConfig& c, std::ostream& out) {
  if (c.deg) {
    if (!c.deg_n || !c.deg_q) throw InvalidInput("--deg needs -n and -q");
    const std::int64_t r = deg_lower_bound(*c.deg_n, *c.deg_q);
    if (machine(c)) {
      out << render_records({{{"n", std::to_string(*c.deg_n)},
                              {"q", std::to_string(*c.deg_q)},
                              {"deg_bound", std::to_string(r)}}});
    } else {
      out << r << "\n";
    }
    return kOk;
  }
  const BaseManifold base = c.cp ? complex_projective(*c.cp) : base_from_json(load_json(c, "bound"));
  validate_base(base);
  const std::int64_t rb = r_bound(base);
  const std::int64_t rn = r_nonhyp_bound(base);
  if (machine(c)) {
    out << render_records({{{"r_B", std::to_string(rb)}, {"r_nonhyp", std::to_string(rn)},
                            {"chi", std::to_string(base.euler_char())},
                            {"c_B", std::to_string(base.chern_min)}}});
  } else {
    out << "r_B = " << rb << "\nr_nonhyp = " << rn << "\n";
    for (const std::string& w : hypothesis_warnings(base)) out << "warning: " << w << "\n";
  }
  return kOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out) {
  const SystemModel system = system_from_json(load_json(c, "certify"));
  BoundOptions options;
  if (c.divisor) {
    const std::int64_t period = 2 * system.base.chern_min;
    if (*c.divisor <= 0 || *c.divisor % period != 0) {
      throw InvalidInput("--divisor must be a positive multiple of 2 c_B = " + std::to_string(period));
    }
    options.divisor_multiple = *c.divisor / period;
  }
  if (!c.eta.empty()) options.eta = parse_rational(c.eta);
  options.ell0 = c.ell0.value_or(0);
  options.search_bound = c.search_bound;
  options.min_k1 = c.min_k1;
  options.workers = c.workers;
  const BoundReport report = verify_theorem_bound(system, options);
  out << (machine(c) ? render_records(report_records(report)) : render_report_text(report));
  return report.verdict == Verdict::consistent ? kOk : kFailed;
}

int cmd_catalog(const RunConfig& c, std::ostream& out) {
  out << (machine(c) ? render_catalog_machine() : render_catalog_text());
  return kOk;
}

int cmd_ellipsoid(const RunConfig& c, std::ostream& out) {
  std::vector<Rational> weights;
  if (c.random_n) {
    weights = near_resonant_weights(*c.random_n, c.seed);
  } else {
    if (c.weights.empty()) throw InvalidInput("ellipsoid needs --weights or --random-n");
    std::string item;
    std::istringstream in(c.weights);
    while (std::getline(in, item, ',')) weights.push_back(parse_rational(item));
  }
  const SystemModel system = ellipsoid_system(weights, c.nondeg_bound);
  if (machine(c)) {
    std::vector<Record> records;
    std::string w;
    for (std::size_t i = 0; i < weights.size(); ++i) w += (i ? "," : "") + to_string(weights[i]);
    records.push_back({{"weights", w}});
    for (const OrbitModel& o : system.orbits) {
      Record r{{"label", o.label}, {"period", to_string(o.period)}};
      for (auto& kv : to_record(o.path)) r.push_back(kv);
      records.push_back(r);
    }
    out << render_records(records);
  } else {
    out << to_json(system).dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Index calculus, common index jumps and multiplicity bounds for Reeb flows",
               "reebcount"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--input", c.input, "Input file (structured text)");
  app.add_option("--output", c.output, "Output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--eta", c.eta, "Rounding tolerance eta as p/q");
  app.add_option("--ell0", c.ell0, "Recurrence window ell0");
  app.add_option("--divisor", c.divisor, "Divisor N for jump values and iterates");
  app.add_option("--search-bound", c.search_bound, "Largest k1 scanned");
  app.add_option("--min-k1", c.min_k1, "Only certificates with k1 above this");
  app.add_option("--seed", c.seed, "Seed for randomized generators");
  app.add_option("--workers", c.workers, "Threads for the jump prefilter");

  auto* index = app.add_subcommand("index", "Conley-Zehnder and mean indices over a range of iterates");
  index->add_option("--from", c.k_from, "First iterate");
  index->add_option("--to", c.k_to, "Last iterate");

  auto* jump = app.add_subcommand("jump", "Find or verify a common index jump certificate");
  jump->add_flag("--verify", c.verify, "Verify --certificate instead of searching");
  jump->add_option("--certificate", c.certificate, "Certificate file (JSON or record)");
  jump->add_option("--count", c.count, "Number of successive certificates");

  auto* hc = app.add_subcommand("hc", "Homology ranks of a prequantization over a degree range");
  hc->add_option("--from", c.m_from, "First degree");
  hc->add_option("--to", c.m_to, "Last degree");
  hc->add_option("--cp", c.cp, "Use CP^n as the base instead of --input");

  auto* bound = app.add_subcommand("bound", "Multiplicity bounds r_B and r_nonhyp, or the degenerate bound");
  bound->add_flag("--deg", c.deg, "Degenerate bound from -n and -q");
  bound->add_option("-n", c.deg_n, "Half-dimension n");
  bound->add_option("-q", c.deg_q, "Index lower bound q");
  bound->add_option("--cp", c.cp, "Use CP^n as the base instead of --input");

  auto* certify = app.add_subcommand("certify", "Run the counting argument on a system file");
  auto* catalog = app.add_subcommand("catalog", "Print the CROSS tables");

  auto* ellipsoid = app.add_subcommand("ellipsoid", "Generate an ellipsoid system file");
  ellipsoid->add_option("--weights", c.weights, "Comma separated weights a_1,...,a_{n+1}");
  ellipsoid->add_option("--random-n", c.random_n, "Near-resonant random weights for S^{2n+1}");
  ellipsoid->add_option("--nondeg-bound", c.nondeg_bound, "Certify iterates up to this bound");

  std::vector<std::string> storage{"reebcount"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (index->parsed()) return cmd_index(c, out);
    if (jump->parsed()) return cmd_jump(c, out);
    if (hc->parsed()) return cmd_hc(c, out);
    if (bound->parsed()) return cmd_bound(c, out);
    if (certify->parsed()) return cmd_certify(c, out);
    if (catalog->parsed()) return cmd_catalog(c, out);
    if (ellipsoid->parsed()) return cmd_ellipsoid(c, out);
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << "\n";
    return kSearchExhausted;
  } catch (const CertificateMismatch& e) {
    err << "certificate mismatch: " << e.what() << "\n";
    return kFailed;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::overflow_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace reeb::cli
