#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "reeb/certifier.hpp"
#include "reeb/cli.hpp"
#include "reeb/errors.hpp"
#include "reeb/serialize.hpp"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction. Anything whose str() is
// an exact literal ("3/10", 7, Fraction) is accepted; floats are not.
namespace pybind11::detail {
template <>
struct type_caster<reeb::Rational> {
  PYBIND11_TYPE_CASTER(reeb::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || PyBool_Check(src.ptr()) || PyFloat_Check(src.ptr())) return false;
    try {
      value = reeb::parse_rational(py::str(src).cast<std::string>());
      return true;
    } catch (const reeb::Error&) {
      return false;
    }
  }

  static handle cast(const reeb::Rational& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(reeb::to_string(r)).release();
  }
};
}  // namespace pybind11::detail

namespace {

py::dict record_dict(const reeb::Record& record) {
  py::dict out;
  for (const auto& [k, v] : record) out[py::str(k)] = v;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace reeb;
  m.doc() = "Exact index calculus, common index jumps and multiplicity bounds";

  auto base_error = py::register_exception<Error>(m, "ReebError");
  py::register_exception<InvalidInput>(m, "InvalidInput", base_error.ptr());
  py::register_exception<DegenerateIterate>(m, "DegenerateIterate", base_error.ptr());
  py::register_exception<IterateOutOfCertifiedRange>(m, "IterateOutOfCertifiedRange",
                                                     base_error.ptr());
  py::register_exception<SearchExhausted>(m, "SearchExhausted", base_error.ptr());
  py::register_exception<HypothesisViolated>(m, "HypothesisViolated", base_error.ptr());
  py::register_exception<ZeroMeanIndex>(m, "ZeroMeanIndex", base_error.ptr());
  py::register_exception<CertificateMismatch>(m, "CertificateMismatch", base_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());

  py::class_<PathModel>(m, "PathModel")
      .def(py::init([](std::int64_t loop_maslov, std::vector<Rational> elliptic,
                       std::vector<std::int64_t> hyperbolic, std::int64_t nondeg_bound) {
             PathModel p;
             p.loop_maslov = loop_maslov;
             p.elliptic = std::move(elliptic);
             p.hyperbolic = std::move(hyperbolic);
             return validate_path(p, nondeg_bound);
           }),
           py::arg("loop_maslov") = 0, py::arg("elliptic") = std::vector<Rational>{},
           py::arg("hyperbolic") = std::vector<std::int64_t>{}, py::arg("nondeg_bound") = 1)
      .def_readonly("loop_maslov", &PathModel::loop_maslov)
      .def_readonly("elliptic", &PathModel::elliptic)
      .def_readonly("hyperbolic", &PathModel::hyperbolic)
      .def_readonly("nondeg_bound", &PathModel::nondeg_bound)
      .def_property_readonly("half_dim", &PathModel::half_dim)
      .def(py::self == py::self)
      .def("__repr__", [](const PathModel& p) { return "PathModel(" + to_json(p).dump() + ")"; });

  m.def("validate_path", &validate_path, py::arg("path"), py::arg("max_iterate"));
  m.def("cz_index", &cz_index, py::arg("path"), py::arg("k"));
  m.def("mean_index", &mean_index, py::arg("path"), py::arg("k"));
  m.def("is_good", &is_good, py::arg("path"), py::arg("k"));
  m.def("invert", &invert);
  m.def("direct_sum", &direct_sum);

  py::class_<JumpParams>(m, "JumpParams")
      .def(py::init([](Rational eta, std::int64_t ell0, std::int64_t divisor,
                       std::int64_t search_bound, int workers) {
             JumpParams p;
             p.eta = eta;
             p.ell0 = ell0;
             p.divisor = divisor;
             p.search_bound = search_bound;
             p.workers = workers;
             check_params(p);
             return p;
           }),
           py::arg("eta") = Rational(1, 10), py::arg("ell0") = 1, py::arg("divisor") = 1,
           py::arg("search_bound") = 10'000'000, py::arg("workers") = 1)
      .def_readonly("eta", &JumpParams::eta)
      .def_readonly("ell0", &JumpParams::ell0)
      .def_readonly("divisor", &JumpParams::divisor)
      .def_readonly("search_bound", &JumpParams::search_bound);

  py::class_<JumpCertificate>(m, "JumpCertificate")
      .def(py::init([](std::int64_t d_plus, std::vector<std::int64_t> k_plus,
                       std::int64_t d_minus, std::vector<std::int64_t> k_minus,
                       JumpParams params) {
             return JumpCertificate{d_plus, std::move(k_plus), d_minus, std::move(k_minus), params};
           }),
           py::arg("d_plus"), py::arg("k_plus"), py::arg("d_minus"), py::arg("k_minus"),
           py::arg("params") = JumpParams{})
      .def_readonly("d_plus", &JumpCertificate::d_plus)
      .def_readonly("k_plus", &JumpCertificate::k_plus)
      .def_readonly("d_minus", &JumpCertificate::d_minus)
      .def_readonly("k_minus", &JumpCertificate::k_minus)
      .def_readonly("params", &JumpCertificate::params)
      .def("to_record", [](const JumpCertificate& c) { return record_dict(to_record(c)); })
      .def(py::self == py::self);

  py::class_<JumpCheck>(m, "JumpCheck")
      .def_readonly("name", &JumpCheck::name)
      .def_readonly("passed", &JumpCheck::passed)
      .def_readonly("counterexample", &JumpCheck::counterexample);
  py::class_<JumpReport>(m, "JumpReport")
      .def_readonly("checks", &JumpReport::checks)
      .def_readonly("ambiguous_rounding", &JumpReport::ambiguous_rounding)
      .def_property_readonly("passed", &JumpReport::passed)
      .def_property_readonly("first_failure", &JumpReport::first_failure);

  m.def("epsilon0", &epsilon0, py::arg("paths"), py::arg("ell0"));
  m.def("find_common_jump", &find_common_jump, py::arg("paths"), py::arg("params"),
        py::arg("min_k1") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("verify_jump", &verify_jump, py::arg("paths"), py::arg("certificate"));

  py::enum_<MonotoneSign>(m, "MonotoneSign")
      .value("positive", MonotoneSign::positive)
      .value("negative", MonotoneSign::negative);
  py::class_<BaseManifold>(m, "BaseManifold")
      .def(py::init([](int n, std::vector<std::int64_t> betti, std::int64_t c_B, MonotoneSign sign) {
             BaseManifold b{n, std::move(betti), c_B, sign};
             validate_base(b);
             return b;
           }),
           py::arg("n"), py::arg("betti"), py::arg("c_B"),
           py::arg("monotone_sign") = MonotoneSign::positive)
      .def_readonly("n", &BaseManifold::n)
      .def_readonly("betti", &BaseManifold::betti)
      .def_readonly("c_B", &BaseManifold::chern_min)
      .def_readonly("monotone_sign", &BaseManifold::monotone_sign)
      .def_property_readonly("euler_char", &BaseManifold::euler_char);

  m.def("complex_projective", &complex_projective, py::arg("n"));
  m.def("hc_rank", &hc_rank, py::arg("base"), py::arg("m"));
  m.def("mean_euler_char", &mean_euler_char, py::arg("base"));
  m.def("windowed_mean_euler_char", &windowed_mean_euler_char, py::arg("base"), py::arg("start"));
  m.def("r_bound", &r_bound, py::arg("base"));
  m.def("r_nonhyp_bound", &r_nonhyp_bound, py::arg("base"));
  m.def("deg_lower_bound", &deg_lower_bound, py::arg("n"), py::arg("q"));
  m.def("render_catalog_text", &render_catalog_text);
  m.def("render_catalog_machine", &render_catalog_machine);
  m.def("cross_catalog", [](std::int64_t max_param) {
    py::list out;
    for (const CrossEntry& e : cross_catalog(max_param)) {
      py::dict d;
      d["name"] = e.name;
      d["base"] = e.base;
      d["r_B"] = e.r_B;
      d["r_nonhyp"] = e.r_nonhyp;
      d["c_B"] = e.c_B;
      out.append(d);
    }
    return out;
  }, py::arg("max_param") = 4);

  py::class_<SystemModel>(m, "SystemModel")
      .def_static("from_json", [](const std::string& text) { return system_from_json(parse_json(text)); })
      .def("to_json", [](const SystemModel& s) { return to_json(s).dump(2); })
      .def_property_readonly("labels", [](const SystemModel& s) {
        std::vector<std::string> out;
        for (const OrbitModel& o : s.orbits) out.push_back(o.label);
        return out;
      })
      .def_property_readonly("paths", [](const SystemModel& s) {
        std::vector<PathModel> out;
        for (const OrbitModel& o : s.orbits) out.push_back(o.path);
        return out;
      })
      .def_readonly("base", &SystemModel::base)
      .def("without", [](const SystemModel& s, const std::string& label) {
        SystemModel out = s;
        std::erase_if(out.orbits, [&](const OrbitModel& o) { return o.label == label; });
        return out;
      }, py::arg("label"));

  m.def("ellipsoid_system", &ellipsoid_system, py::arg("weights"), py::arg("nondeg_bound") = 1);
  m.def("near_resonant_weights", &near_resonant_weights, py::arg("n"), py::arg("seed"));
  m.def("resonance_check", [](const SystemModel& s) {
    const ResonanceResult r = resonance_check(s);
    py::dict d;
    d["passed"] = r.passed;
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["residual"] = r.residual;
    return d;
  });
  m.def("ell0", py::overload_cast<const SystemModel&>(&ell0));

  m.def("certify", [](const SystemModel& s, std::int64_t divisor_multiple, int workers) {
    BoundOptions opt;
    opt.divisor_multiple = divisor_multiple;
    opt.workers = workers;
    BoundReport report;
    {
      py::gil_scoped_release release;
      report = verify_theorem_bound(s, opt);
    }
    py::dict out;
    for (const Record& r : report_records(report)) {
      for (const auto& [k, v] : r) out[py::str(k)] = v;
    }
    return out;
  }, py::arg("system"), py::arg("divisor_multiple") = 1, py::arg("workers") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
