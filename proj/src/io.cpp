#include "evfam/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace evfam::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw InputError(msg); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where + ": expected a finite number");
  return v;
}

std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

cfp::Vector vector_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected an array of numbers");
  cfp::Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = number(j[k], where);
  return v;
}

json vector_to(const cfp::Vector& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
  return a;
}

std::string kind_of(const json& j, const std::string& where) {
  const json& k = field(j, "kind", where);
  if (!k.is_string()) fail(where + ": \"kind\" must be a string");
  return k.get<std::string>();
}

Subset subset_from(const FiniteGround& g, const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected a list of element names");
  std::vector<std::string> names;
  for (const auto& e : j) {
    if (!e.is_string()) fail(where + ": element names must be strings");
    names.push_back(e.get<std::string>());
  }
  try {
    return g.subset(names);
  } catch (const std::exception& e) {
    fail(where + ": " + e.what());
  }
}

json subset_to(const FiniteGround& g, Subset s) { return g.members(s); }

// Wraps library validation errors into InputError.
template <typename F>
auto guarded(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  } catch (const std::out_of_range& e) {
    fail(where + ": " + e.what());
  }
}

}  // namespace

json to_json(ExtNat v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

ExtNat extnat_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtNat::infinity();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) return ExtNat(j.get<std::uint64_t>());
  fail("expected a nonnegative integer or \"inf\"");
}

json to_json(const EPSet& s) { return s.to_string(); }

EPSet epset_from_json(const json& j) {
  if (!j.is_string()) fail("EPSet: expected a string \"prefix=...;period=...\"");
  return guarded("EPSet", [&] { return EPSet::parse(j.get<std::string>()); });
}

json to_json(const Ground& g) {
  if (is_naturals(g)) return "N";
  const auto& f = finite_ground(g);
  json a = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) a.push_back(f.name(i));
  return a;
}

Ground ground_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "N") return Naturals{};
  if (!j.is_array()) fail("ground: expected \"N\" or a list of element names");
  std::vector<std::string> names;
  for (const auto& e : j) {
    if (!e.is_string()) fail("ground: element names must be strings");
    names.push_back(e.get<std::string>());
  }
  return guarded("ground", [&] { return FiniteGround(std::move(names)); });
}

json to_json(const Family& f) {
  json j;
  j["ground"] = to_json(f.ground());
  j["kind"] = to_string(f.kind());
  switch (f.kind()) {
    case FamilyKind::CoGapLevel: j["c"] = to_json(f.threshold()); break;
    case FamilyKind::Indicator: {
      json sets = json::array();
      for (auto s : f.sets()) sets.push_back(subset_to(finite_ground(f.ground()), s));
      j["sets"] = sets;
      break;
    }
    case FamilyKind::Level:
      j["multifamily"] = to_json(f.multifamily());
      j["c"] = to_json(f.threshold());
      break;
    case FamilyKind::Predicate:
    case FamilyKind::Pushed: j["description"] = f.describe(); break;
    default: break;
  }
  return j;
}

Family family_from_json(const json& j) {
  const std::string where = "family";
  const std::string kind = kind_of(j, where);
  const Ground g = j.contains("ground") ? ground_from_json(j.at("ground")) : Ground{Naturals{}};
  return guarded(where, [&]() -> Family {
    if (kind == "empty") return Family::empty(g);
    if (kind == "all") return Family::all(g);
    auto naturals_only = [&] {
      if (!is_naturals(g)) fail(where + ": kind \"" + kind + "\" lives on the naturals");
    };
    if (kind == "cofinite") return naturals_only(), Family::cofinite();
    if (kind == "infinite") return naturals_only(), Family::infinite();
    if (kind == "cogap_level") return naturals_only(), Family::cogap_level(extnat_from_json(field(j, "c", where)));
    if (kind == "indicator") {
      if (is_naturals(g)) fail(where + ": indicator families need a finite ground");
      const auto& fg = finite_ground(g);
      const json& sets = field(j, "sets", where);
      if (!sets.is_array()) fail(where + ": \"sets\" must be a list");
      std::vector<Subset> members;
      for (const auto& s : sets) members.push_back(subset_from(fg, s, where));
      return Family::indicator(fg, std::move(members));
    }
    if (kind == "level") {
      return Family::level(multifamily_from_json(field(j, "multifamily", where)),
                           extnat_from_json(field(j, "c", where)));
    }
    fail(where + ": unknown or non-serializable kind \"" + kind + "\"");
  });
}

json to_json(const FiniteTopology& t) {
  json opens = json::array();
  for (auto u : t.opens()) opens.push_back(subset_to(t.ground(), u));
  return {{"ground", to_json(Ground{t.ground()})}, {"opens", opens}};
}

FiniteTopology topology_from_json(const json& j) {
  const std::string where = "topology";
  const Ground g = ground_from_json(field(j, "ground", where));
  if (is_naturals(g)) fail(where + ": ground must be finite");
  const auto& fg = finite_ground(g);
  const json& opens = field(j, "opens", where);
  if (!opens.is_array()) fail(where + ": \"opens\" must be a list");
  std::vector<Subset> sets;
  for (const auto& s : opens) sets.push_back(subset_from(fg, s, where));
  return guarded(where, [&] { return FiniteTopology(fg, std::move(sets)); });
}

json to_json(const Multifamily& m) {
  json j;
  j["kind"] = to_string(m.kind());
  switch (m.kind()) {
    case MultifamilyKind::Complement: j["inner"] = to_json(m.inner()); break;
    case MultifamilyKind::Indicator: j["family"] = to_json(m.family()); break;
    case MultifamilyKind::Explicit: {
      const auto& g = finite_ground(m.ground());
      j["ground"] = to_json(m.ground());
      json table = json::array();
      for (const auto& [s, v] : m.table()) table.push_back(json::array({subset_to(g, s), to_json(v)}));
      j["table"] = table;
      break;
    }
    case MultifamilyKind::Pushed:
    case MultifamilyKind::Predicate: j["description"] = m.describe(); break;
    default: break;
  }
  return j;
}

Multifamily multifamily_from_json(const json& j) {
  const std::string where = "multifamily";
  const std::string kind = kind_of(j, where);
  return guarded(where, [&]() -> Multifamily {
    if (kind == "gap") return Multifamily::gap();
    if (kind == "cogap") return Multifamily::cogap();
    if (kind == "complement") return Multifamily::complement_of(multifamily_from_json(field(j, "inner", where)));
    if (kind == "indicator") return Multifamily::indicator(family_from_json(field(j, "family", where)));
    if (kind == "explicit") {
      const json& table = field(j, "table", where);
      if (!table.is_array()) fail(where + ": \"table\" must be a list of [set, multiplicity] pairs");
      std::vector<std::string> names;
      if (j.contains("ground")) {
        const Ground g = ground_from_json(j.at("ground"));
        if (is_naturals(g)) fail(where + ": explicit tables need a finite ground");
        for (std::size_t i = 0; i < finite_ground(g).size(); ++i) names.push_back(finite_ground(g).name(i));
      } else {
        // Ground inferred from the table, in order of first mention.
        for (const auto& row : table)
          if (row.is_array() && !row.empty() && row[0].is_array())
            for (const auto& e : row[0])
              if (e.is_string() && std::find(names.begin(), names.end(), e.get<std::string>()) == names.end())
                names.push_back(e.get<std::string>());
      }
      FiniteGround g(std::move(names));
      std::vector<std::pair<Subset, ExtNat>> rows;
      for (const auto& row : table) {
        if (!row.is_array() || row.size() != 2) fail(where + ": table rows must be [set, multiplicity]");
        rows.emplace_back(subset_from(g, row[0], where), extnat_from_json(row[1]));
      }
      return Multifamily::explicit_table(std::move(g), std::move(rows));
    }
    fail(where + ": unknown or non-serializable kind \"" + kind + "\"");
  });
}

json to_json(const Multiset& m) {
  json j = json::object();
  for (std::size_t i = 0; i < m.ground.size(); ++i) j[m.ground.name(i)] = to_json(m.mult[i]);
  return j;
}

json to_json(const SetSequence& s) {
  json traces = json::object();
  for (std::size_t x = 0; x < s.ground().size(); ++x) traces[s.ground().name(x)] = to_json(s.trace(x));
  return {{"ground", to_json(Ground{s.ground()})}, {"traces", traces}};
}

SetSequence set_sequence_from_json(const json& j) {
  const std::string where = "set sequence";
  const Ground g = ground_from_json(field(j, "ground", where));
  if (is_naturals(g)) fail(where + ": ground must be finite");
  const auto& fg = finite_ground(g);
  const json& traces = field(j, "traces", where);
  if (!traces.is_object()) fail(where + ": \"traces\" must map element names to EPSets");
  std::vector<EPSet> out;
  for (std::size_t x = 0; x < fg.size(); ++x) {
    if (!traces.contains(fg.name(x))) fail(where + ": no trace for element \"" + fg.name(x) + "\"");
    out.push_back(epset_from_json(traces.at(fg.name(x))));
  }
  if (traces.size() != fg.size()) fail(where + ": traces name elements outside the ground");
  return SetSequence(fg, std::move(out));
}

json to_json(const FamilyReport& r) {
  auto verdict = [](const Verdict& v) {
    json j = {{"holds", v.holds}, {"evidence", v.evidence == Evidence::Exact ? "exact" : "sampled"}};
    if (!v.witness.empty()) j["witness"] = v.witness;
    return j;
  };
  return {{"eventual", verdict(r.eventual)},
          {"co_eventual", verdict(r.co_eventual)},
          {"filter", verdict(r.filter)},
          {"finitely_insensitive", verdict(r.finitely_insensitive)},
          {"cases", r.cases}};
}

// ---------------------------------------------------------------------------

json to_json(const cfp::Operator& op) {
  using cfp::OperatorKind;
  json j = {{"kind", cfp::to_string(op.kind())}};
  switch (op.kind()) {
    case OperatorKind::Halfspace:
    case OperatorKind::Hyperplane:
      j["a"] = vector_to(op.normal());
      j["b"] = op.offset();
      break;
    case OperatorKind::Ball:
      j["center"] = vector_to(op.center());
      j["radius"] = op.radius();
      break;
    case OperatorKind::Box:
      j["lo"] = vector_to(op.lower());
      j["hi"] = vector_to(op.upper());
      break;
    case OperatorKind::Affine: {
      json rows = json::array();
      for (Eigen::Index r = 0; r < op.matrix().rows(); ++r) rows.push_back(vector_to(op.matrix().row(r).transpose()));
      j["A"] = rows;
      j["d"] = vector_to(op.rhs());
      break;
    }
    case OperatorKind::Subgradient: {
      json pieces = json::array();
      for (const auto& p : op.pieces()) pieces.push_back({{"g", vector_to(p.g)}, {"h", p.h}});
      j["pieces"] = pieces;
      break;
    }
    case OperatorKind::Averaged: j["inner"] = to_json(op.inner()); break;
    case OperatorKind::Relaxed:
      j["inner"] = to_json(op.inner());
      j["lambda"] = op.lambda();
      break;
    case OperatorKind::Custom: throw std::invalid_argument("custom operators cannot be serialized");
  }
  return j;
}

cfp::Operator operator_from_json(const json& j, std::size_t dim) {
  const std::string where = "operator";
  const std::string kind = kind_of(j, where);
  auto vec = [&](const char* key) {
    cfp::Vector v = vector_from(field(j, key, where), where + "." + key);
    if (static_cast<std::size_t>(v.size()) != dim)
      fail(where + "." + key + ": expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
    return v;
  };
  auto num = [&](const char* key) { return number(field(j, key, where), where + "." + key); };
  return guarded(where, [&]() -> cfp::Operator {
    if (kind == "halfspace" || kind == "hyperplane") {
      cfp::Vector a = vec("a");
      double b = num("b");
      const double norm = a.norm();
      if (norm == 0.0) fail(where + ": normal vector must be nonzero");
      a /= norm;
      b /= norm;
      return kind == "halfspace" ? cfp::Operator::halfspace(a, b) : cfp::Operator::hyperplane(a, b);
    }
    if (kind == "ball") return cfp::Operator::ball(vec("center"), num("radius"));
    if (kind == "box") return cfp::Operator::box(vec("lo"), vec("hi"));
    if (kind == "affine") {
      const json& rows = field(j, "A", where);
      if (!rows.is_array() || rows.empty()) fail(where + ".A: expected a nonempty list of rows");
      cfp::Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        cfp::Vector row = vector_from(rows[r], where + ".A");
        if (static_cast<std::size_t>(row.size()) != dim) fail(where + ".A: every row needs " + std::to_string(dim) + " entries");
        a.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      cfp::Vector d = vector_from(field(j, "d", where), where + ".d");
      return cfp::Operator::affine(std::move(a), std::move(d));
    }
    if (kind == "subgradient") {
      const json& pieces = field(j, "pieces", where);
      if (!pieces.is_array()) fail(where + ".pieces: expected a list");
      std::vector<cfp::AffinePiece> out;
      for (const auto& p : pieces) {
        cfp::Vector g = vector_from(field(p, "g", where), where + ".g");
        if (static_cast<std::size_t>(g.size()) != dim) fail(where + ".g: expected " + std::to_string(dim) + " entries");
        out.push_back({std::move(g), number(field(p, "h", where), where + ".h")});
      }
      return cfp::Operator::subgradient(std::move(out));
    }
    if (kind == "averaged") return cfp::Operator::averaged(operator_from_json(field(j, "inner", where), dim));
    if (kind == "relaxed")
      return cfp::Operator::relaxed(operator_from_json(field(j, "inner", where), dim), num("lambda"));
    fail(where + ": unknown kind \"" + kind + "\"");
  });
}

json to_json(const Problem& p) {
  json ops = json::array();
  for (const auto& op : p.operators) ops.push_back(to_json(op));
  json control;
  switch (p.control.kind()) {
    case cfp::ControlKind::Cyclic: control = {{"kind", "cyclic"}}; break;
    case cfp::ControlKind::AlmostCyclic:
    case cfp::ControlKind::Explicit: {
      json seq = json::array();
      for (auto i : p.control.pattern()) seq.push_back(i + 1);
      if (p.control.kind() == cfp::ControlKind::AlmostCyclic)
        control = {{"kind", "almost_cyclic"}, {"pattern", seq}};
      else
        control = {{"kind", "explicit"}, {"list", seq}};
      break;
    }
  }
  json relaxation = p.relaxation.is_constant()
                        ? json{{"kind", "constant"}, {"value", p.relaxation.values().front()}}
                        : json{{"kind", "sequence"}, {"values", p.relaxation.values()}};
  return {{"dim", p.dim},
          {"operators", ops},
          {"control", control},
          {"relaxation", relaxation},
          {"x0", vector_to(p.x0)},
          {"stop", {{"tol", p.stop.tol}, {"max_iter", p.stop.max_iter}, {"stride", p.stop.stride}}}};
}

Problem problem_from_json(const json& j) {
  const std::string where = "problem";
  if (!j.is_object()) fail(where + ": expected a JSON object");
  Problem p;
  p.dim = count(field(j, "dim", where), where + ".dim");
  if (p.dim == 0) fail(where + ".dim: must be positive");
  const json& ops = field(j, "operators", where);
  if (!ops.is_array()) fail(where + ".operators: expected a list");
  if (ops.empty()) fail(where + ".operators: at least one operator is required");
  for (const auto& o : ops) p.operators.push_back(operator_from_json(o, p.dim));
  const std::size_t m = p.operators.size();

  auto indices = [&](const json& list, const std::string& w) {
    if (!list.is_array() || list.empty()) fail(w + ": expected a nonempty list of operator indices");
    std::vector<std::size_t> out;
    for (const auto& e : list) {
      const std::size_t i = count(e, w);
      if (i < 1 || i > m) fail(w + ": operator index " + std::to_string(i) + " outside 1.." + std::to_string(m));
      out.push_back(i - 1);
    }
    return out;
  };
  if (j.contains("control")) {
    const json& c = j.at("control");
    const std::string kind = kind_of(c, where + ".control");
    if (kind == "cyclic")
      p.control = cfp::Control::cyclic(m);
    else if (kind == "almost_cyclic")
      p.control = cfp::Control::almost_cyclic(indices(field(c, "pattern", where), where + ".control.pattern"));
    else if (kind == "explicit")
      p.control = cfp::Control::explicit_list(indices(field(c, "list", where), where + ".control.list"));
    else
      fail(where + ".control: unknown kind \"" + kind + "\"");
  } else {
    p.control = cfp::Control::cyclic(m);
  }
  guarded(where + ".control", [&] { return control_validate(p.control, m, p.control.pattern().size()); });

  if (j.contains("relaxation")) {
    const json& r = j.at("relaxation");
    const std::string kind = kind_of(r, where + ".relaxation");
    p.relaxation = guarded(where + ".relaxation", [&]() -> cfp::Relaxation {
      if (kind == "constant") return cfp::Relaxation::constant(number(field(r, "value", where), where + ".relaxation.value"));
      if (kind == "sequence") {
        const json& v = field(r, "values", where);
        if (!v.is_array()) fail(where + ".relaxation.values: expected a list");
        std::vector<double> values;
        for (const auto& e : v) values.push_back(number(e, where + ".relaxation.values"));
        return cfp::Relaxation::sequence(std::move(values));
      }
      fail(where + ".relaxation: unknown kind \"" + kind + "\"");
    });
  }
  if (p.relaxation.inf() == 0.0) p.warnings.push_back("relaxation reaches 0; convergence hypotheses are not guaranteed");
  if (p.relaxation.sup() == 2.0) p.warnings.push_back("relaxation reaches 2; convergence hypotheses are not guaranteed");

  p.x0 = vector_from(field(j, "x0", where), where + ".x0");
  if (static_cast<std::size_t>(p.x0.size()) != p.dim) fail(where + ".x0: expected " + std::to_string(p.dim) + " entries");

  if (j.contains("stop")) {
    const json& s = j.at("stop");
    if (!s.is_object()) fail(where + ".stop: expected an object");
    if (s.contains("tol")) p.stop.tol = number(s.at("tol"), where + ".stop.tol");
    if (s.contains("max_iter")) p.stop.max_iter = count(s.at("max_iter"), where + ".stop.max_iter");
    if (s.contains("stride")) p.stop.stride = count(s.at("stride"), where + ".stop.stride");
    if (!(p.stop.tol >= 0.0)) fail(where + ".stop.tol: must be nonnegative");
    if (p.stop.stride == 0) fail(where + ".stop.stride: must be positive");
  }
  return p;
}

std::string trace_to_jsonl(const cfp::Trace& t) {
  std::string out;
  for (std::size_t n = 0; n < t.steps(); ++n) {
    json rec = {{"n", n},
                {"i", t.controls[n] + 1},
                {"lambda", t.lambdas[n]},
                {"x", vector_to(t.iterates[n])},
                {"res", t.step_residuals[n]}};
    out += rec.dump();
    out += '\n';
  }
  json last = {{"n", t.steps()}, {"x", vector_to(t.final_point())}, {"status", cfp::to_string(t.status)}};
  out += last.dump();
  out += '\n';
  return out;
}

cfp::Trace trace_from_jsonl(const std::string& text) {
  cfp::Trace t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool finished = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "trace line " + std::to_string(lineno);
    if (finished) fail(where + ": record after the final record");
    const json rec = parse_json(line, where);
    if (count(field(rec, "n", where), where + ".n") != t.iterates.size())
      fail(where + ": expected n = " + std::to_string(t.iterates.size()));
    cfp::Vector x = vector_from(field(rec, "x", where), where + ".x");
    if (!t.iterates.empty() && x.size() != t.iterates.front().size()) fail(where + ": dimension changes");
    t.iterates.push_back(std::move(x));
    if (rec.contains("status")) {
      const std::string s = rec.at("status").get<std::string>();
      if (s == "converged")
        t.status = cfp::RunStatus::Converged;
      else if (s == "iteration_cap")
        t.status = cfp::RunStatus::IterationCap;
      else
        fail(where + ": unknown status \"" + s + "\"");
      finished = true;
      continue;
    }
    const std::size_t i = count(field(rec, "i", where), where + ".i");
    if (i == 0) fail(where + ".i: operator indices start at 1");
    t.controls.push_back(i - 1);
    t.lambdas.push_back(number(field(rec, "lambda", where), where + ".lambda"));
    t.step_residuals.push_back(number(field(rec, "res", where), where + ".res"));
  }
  if (!finished) fail("trace: missing final record");
  return t;
}

json summary_json(const cfp::Trace& t, const Problem& p) {
  json checkpoints = json::array();
  for (const auto& c : t.checkpoints) checkpoints.push_back({{"n", c.n}, {"max_residual", c.max_residual}});
  return {{"status", cfp::to_string(t.status)},
          {"iterations", t.steps()},
          {"final_point", vector_to(t.final_point())},
          {"max_residual", cfp::max_residual(p.operators, t.final_point())},
          {"checkpoints", checkpoints},
          {"warnings", p.warnings}};
}

json to_json(const analysis::FollowsReport& r) {
  json j = {{"operator", r.op + 1},
            {"criterion", r.criterion()},
            {"range", {r.first, r.last}},
            {"window", r.window},
            {"holds", r.holds},
            {"witness_count", r.witnesses.size()}};
  j["min_c"] = r.min_c ? json(*r.min_c) : json("none");
  json pairs = json::array();
  for (std::size_t k = 0; k < r.witnesses.size() && k < 20; ++k)
    pairs.push_back({r.witnesses[k], r.witnesses[k] + 1});
  j["witnesses"] = pairs;
  return j;
}

json to_json(const analysis::LimitEstimate& e) {
  json cands = json::array();
  for (const auto& c : e.candidates) {
    json table = json::array();
    for (std::size_t k = 0; k < e.ladder.size(); ++k) table.push_back({{"eps", e.ladder[k]}, {"run", c.run_stats[k]}});
    cands.push_back({{"point", vector_to(c.point)},
                     {"per_eps", table},
                     {"estimate", to_json(c.estimate)},
                     {"estimate_kind", c.exact ? "exact" : "lower_bound"}});
  }
  json j = {{"ladder", e.ladder}, {"n0", e.n0}, {"candidates", cands}};
  j["classical_limit"] = e.limit ? vector_to(*e.limit) : json("none");
  return j;
}

json to_json(const analysis::Certification& c) {
  json cands = json::array();
  for (const auto& y : c.candidates) cands.push_back(vector_to(y));
  json follows = json::array();
  for (const auto& f : c.follows) follows.push_back(to_json(f));
  json checks = json::array();
  for (const auto& f : c.checks)
    checks.push_back({{"candidate", f.candidate}, {"operator", f.op + 1}, {"residual", f.residual}, {"ok", f.ok}});
  return {{"status", analysis::to_string(c.status)},
          {"candidates", cands},
          {"follows", follows},
          {"checks", checks},
          {"notes", c.notes}};
}

Analysis analyze_trace(const cfp::Trace& trace, const Problem& p, const AnalyzeOptions& opt) {
  namespace an = analysis;
  if (trace.iterates.empty()) fail("trace has no iterates");
  const auto rep = cfp::replay(trace, p.operators);
  if (!rep.ok)
    fail("trace does not replay against the problem at step " + std::to_string(rep.first_mismatch) + ": " +
         rep.detail);
  const std::size_t n0 = opt.n0.value_or(trace.iterates.size() / 2);
  if (n0 >= trace.iterates.size()) fail("n0 must be smaller than the number of iterates");
  if (opt.tol && !(*opt.tol > 0.0)) fail("tol must be positive");
  const double tol = opt.tol.value_or(10.0 * p.stop.tol);
  std::size_t window = 0;
  if (opt.window) {
    if (*opt.window == 0) fail("window must be positive");
    window = *opt.window;
  } else {
    window = cfp::control_validate(p.control, p.operators.size(), p.control.pattern().size());
  }
  json follows = json::array();
  for (std::size_t i = 0; i < p.operators.size(); ++i)
    follows.push_back(to_json(an::follows_check(trace, p.operators, i, !opt.strict, window)));
  an::LimitEstimate estimate;
  try {
    estimate = an::cogap_limit_estimate(trace.iterates, opt.ladder, n0);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  const auto cert = an::certify_fixed_points(trace, p.operators, std::min(opt.ladder.back(), tol), n0, tol);
  Analysis a;
  a.status = cert.status;
  a.notes = cert.notes;
  a.report = {{"replay", {{"ok", true}, {"max_deviation", rep.max_deviation}}},
              {"iterations", trace.steps()},
              {"window", window},
              {"tolerance", tol},
              {"follows", follows},
              {"limit_estimate", to_json(estimate)},
              {"certification", to_json(cert)}};
  return a;
}

std::string runs_csv(const cfp::Trace& trace) {
  std::ostringstream csv;
  csv << std::setprecision(17) << "n,i,lambda,res,dist_to_final\n";
  for (std::size_t n = 0; n < trace.steps(); ++n)
    csv << n << ',' << trace.controls[n] + 1 << ',' << trace.lambdas[n] << ',' << trace.step_residuals[n] << ','
        << (trace.iterates[n] - trace.final_point()).norm() << '\n';
  return csv.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(what + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace evfam::io
