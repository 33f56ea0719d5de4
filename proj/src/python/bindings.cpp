// Python bindings. Structured inputs and outputs cross the boundary as JSON
// text in the CLI schemas; the evfam package wraps that in dicts.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "evfam/io.hpp"

namespace py = pybind11;
using namespace evfam;
using io::json;

namespace bind {

py::object extnat(ExtNat v) {
  if (v.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
  return py::int_(v.value());
}

json parse(const std::string& text) { return io::parse_json(text, "argument"); }

std::vector<std::string> names(const FiniteGround& g, Subset s) { return g.members(s); }

SetRep set_arg(const Ground& g, const py::object& s) {
  if (py::isinstance<EPSet>(s)) return s.cast<EPSet>();
  if (py::isinstance<py::str>(s)) return EPSet::parse(s.cast<std::string>());
  if (is_naturals(g)) throw io::InputError("expected an EPSet or its text form");
  try {
    return finite_ground(g).subset(s.cast<std::vector<std::string>>());
  } catch (const std::out_of_range& e) {
    throw io::InputError(std::string("unknown element: ") + e.what());
  }
}

std::string classify(const std::string& family, std::size_t budget, std::uint64_t seed) {
  return io::to_json(evfam::classify(io::family_from_json(parse(family)), budget, seed)).dump();
}

bool family_contains(const std::string& family, const py::object& s) {
  const auto f = io::family_from_json(parse(family));
  return f.contains(set_arg(f.ground(), s));
}

py::object star(const std::string& family) {
  const auto f = io::family_from_json(parse(family));
  const SetRep s = evfam::star(f);
  if (is_naturals(f.ground())) return py::cast(std::get<EPSet>(s));
  return py::cast(names(finite_ground(f.ground()), std::get<Subset>(s)));
}

std::vector<std::string> limit_set(const std::string& family, const std::string& topology) {
  const auto t = io::topology_from_json(parse(topology));
  return names(t.ground(), evfam::limit_set(io::family_from_json(parse(family)), t));
}

std::vector<std::string> e_limit(const std::string& family, const std::string& sequence) {
  const auto seq = io::set_sequence_from_json(parse(sequence));
  return names(seq.ground(), evfam::e_limit(io::family_from_json(parse(family)), seq));
}

py::dict classical_limits(const std::string& sequence) {
  const auto seq = io::set_sequence_from_json(parse(sequence));
  const auto cl = evfam::classical_limits(seq);
  py::dict d;
  d["limsup"] = names(seq.ground(), cl.limsup);
  d["liminf"] = names(seq.ground(), cl.liminf);
  d["lim"] = cl.lim ? py::cast(names(seq.ground(), *cl.lim)) : py::none();
  return d;
}

py::object mf_value(const std::string& multifamily, const py::object& s) {
  const auto m = io::multifamily_from_json(parse(multifamily));
  return extnat(evfam::mf_value(m, set_arg(m.ground(), s)));
}

std::string multiset_limit(const std::string& multifamily, const std::string& topology) {
  const auto t = io::topology_from_json(parse(topology));
  return io::to_json(evfam::multiset_limit(io::multifamily_from_json(parse(multifamily)), t)).dump();
}

struct PyTrace {
  cfp::Trace trace;
};

PyTrace solve(const std::string& problem) {
  const auto p = io::problem_from_json(parse(problem));
  py::gil_scoped_release release;
  return {cfp::acsa_run(p.operators, p.control, p.relaxation, p.x0, p.stop)};
}

py::tuple analyze(const PyTrace& t, const std::string& problem, std::vector<double> ladder,
                  std::optional<std::size_t> window, bool strict, std::optional<std::size_t> n0,
                  std::optional<double> tol) {
  io::AnalyzeOptions opt;
  if (!ladder.empty()) opt.ladder = std::move(ladder);
  opt.window = window;
  opt.strict = strict;
  opt.n0 = n0;
  opt.tol = tol;
  const auto a = io::analyze_trace(t.trace, io::problem_from_json(parse(problem)), opt);
  return py::make_tuple(analysis::to_string(a.status), a.report.dump());
}

std::string cogap_limit_estimate(const Eigen::MatrixXd& points, std::vector<double> ladder, std::size_t n0) {
  std::vector<cfp::Vector> xs;
  for (Eigen::Index r = 0; r < points.rows(); ++r) xs.push_back(points.row(r).transpose());
  if (ladder.empty()) ladder = analysis::kDefaultLadder;
  return io::to_json(analysis::cogap_limit_estimate(xs, ladder, n0)).dump();
}

Eigen::MatrixXd stack(const std::vector<cfp::Vector>& xs) {
  if (xs.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), xs.front().size());
  for (std::size_t n = 0; n < xs.size(); ++n) m.row(static_cast<Eigen::Index>(n)) = xs[n].transpose();
  return m;
}

}  // namespace bind

PYBIND11_MODULE(_evfam, m) {
  using bind::extnat;
  using bind::PyTrace;
  m.doc() = "Eventual families, set limits and the almost-cyclic sequential algorithm";

  py::register_exception<io::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<cfp::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<EPSet>(m, "EPSet")
      .def(py::init<std::vector<bool>, std::vector<bool>>(), py::arg("prefix"), py::arg("period"))
      .def_static("parse", &EPSet::parse)
      .def_static("empty", &EPSet::empty)
      .def_static("naturals", &EPSet::naturals)
      .def_static("finite", [](const std::vector<Index>& xs) { return EPSet::finite(std::span<const Index>(xs)); })
      .def_static("residue_class", &EPSet::residue_class, py::arg("modulus"), py::arg("residue"))
      .def("__contains__", &EPSet::contains)
      .def("contains", &EPSet::contains)
      .def("complement", &EPSet::complement)
      .def("finitely_change",
           [](const EPSet& s, const std::vector<Index>& add, const std::vector<Index>& remove) {
             return s.finitely_change(add, remove);
           },
           py::arg("add") = std::vector<Index>{}, py::arg("remove") = std::vector<Index>{})
      .def("union", &EPSet::unite)
      .def("intersection", &EPSet::intersect)
      .def("issubset", &EPSet::is_subset_of)
      .def("gap", [](const EPSet& s) { return extnat(s.gap()); })
      .def("cogap", [](const EPSet& s) { return extnat(s.cogap()); })
      .def_property_readonly("is_finite", &EPSet::is_finite)
      .def_property_readonly("is_cofinite", &EPSet::is_cofinite)
      .def_property_readonly("prefix", &EPSet::prefix)
      .def_property_readonly("period", &EPSet::period)
      .def("__eq__", [](const EPSet& a, const EPSet& b) { return a == b; })
      .def("__hash__", [](const EPSet& s) { return py::hash(py::str(s.to_string())); })
      .def("__str__", &EPSet::to_string)
      .def("__repr__", [](const EPSet& s) { return "EPSet.parse('" + s.to_string() + "')"; });

  m.def("_classify", &bind::classify);
  m.def("_family_contains", &bind::family_contains);
  m.def("_star", &bind::star);
  m.def("_limit_set", &bind::limit_set);
  m.def("_e_limit", &bind::e_limit);
  m.def("_classical_limits", &bind::classical_limits);
  m.def("_mf_value", &bind::mf_value);
  m.def("_multiset_limit", &bind::multiset_limit);

  py::class_<PyTrace>(m, "Trace")
      .def_property_readonly("iterates", [](const PyTrace& t) { return bind::stack(t.trace.iterates); })
      .def_property_readonly("controls",
                             [](const PyTrace& t) {
                               std::vector<std::size_t> one_based;
                               for (auto i : t.trace.controls) one_based.push_back(i + 1);
                               return one_based;
                             })
      .def_property_readonly("lambdas", [](const PyTrace& t) { return t.trace.lambdas; })
      .def_property_readonly("residuals", [](const PyTrace& t) { return t.trace.step_residuals; })
      .def_property_readonly("status", [](const PyTrace& t) { return cfp::to_string(t.trace.status); })
      .def_property_readonly("steps", [](const PyTrace& t) { return t.trace.steps(); })
      .def_property_readonly("final_point", [](const PyTrace& t) { return cfp::Vector(t.trace.final_point()); })
      .def("to_jsonl", [](const PyTrace& t) { return io::trace_to_jsonl(t.trace); })
      .def_static("from_jsonl", [](const std::string& text) { return PyTrace{io::trace_from_jsonl(text)}; })
      .def("__len__", [](const PyTrace& t) { return t.trace.iterates.size(); });

  m.def("_solve", &bind::solve);
  m.def("_analyze", &bind::analyze);
  m.def("_cogap_limit_estimate", &bind::cogap_limit_estimate);
}
