// evfam: solve | analyze | check | demo

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "checks.hpp"
#include "evfam/analysis.hpp"
#include "evfam/io.hpp"

namespace fs = std::filesystem;
using evfam::io::json;

namespace {

enum Exit { kOk = 0, kInputError = 1, kCapOrInconclusive = 2, kViolation = 3 };

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write(const fs::path& dir, const std::string& name, const std::string& content) {
  fs::create_directories(dir);
  evfam::io::write_file_atomic(dir / name, content);
}

evfam::io::Problem load_problem(const fs::path& path) {
  return evfam::io::problem_from_json(evfam::io::parse_json(evfam::io::read_file(path), path.string()));
}

// ---------------------------------------------------------------------------

int solve(const evfam::io::Problem& p, const fs::path& out) {
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << "\n";
  const auto trace = evfam::cfp::acsa_run(p.operators, p.control, p.relaxation, p.x0, p.stop);
  write(out, "trace.jsonl", evfam::io::trace_to_jsonl(trace));
  const json summary = evfam::io::summary_json(trace, p);
  write(out, "summary.json", dump(summary));
  std::cout << "status " << evfam::cfp::to_string(trace.status) << " after " << trace.steps()
            << " iterations, max residual " << summary["max_residual"].get<double>() << "\n";
  return trace.status == evfam::cfp::RunStatus::Converged ? kOk : kCapOrInconclusive;
}

int analyze(const evfam::cfp::Trace& trace, const evfam::io::Problem& p, const evfam::io::AnalyzeOptions& opt,
            const fs::path& out) {
  namespace an = evfam::analysis;
  const auto a = evfam::io::analyze_trace(trace, p, opt);
  write(out, "report.json", dump(a.report));
  write(out, "runs.csv", evfam::io::runs_csv(trace));
  const std::size_t candidates = a.report["certification"]["candidates"].size();
  std::cout << "certification: " << an::to_string(a.status) << " (" << candidates << " candidate"
            << (candidates == 1 ? "" : "s") << ")\n";
  for (const auto& note : a.notes) std::cout << "  note: " << note << "\n";
  switch (a.status) {
    case an::CertStatus::Certified: return kOk;
    case an::CertStatus::Inconclusive: return kCapOrInconclusive;
    case an::CertStatus::Violation: return kViolation;
  }
  return kInputError;
}

int check(const std::string& suite, std::uint64_t seed, std::size_t budget) {
  std::vector<std::string> names;
  if (suite == "all")
    names = evfam::checks::kSuites;
  else
    names = {suite};
  std::size_t cases = 0;
  bool ok = true;
  for (const auto& name : names) {
    const auto r = evfam::checks::run_suite(name, seed, budget);
    cases += r.cases;
    ok &= r.ok();
    std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.cases << " cases, " << r.failures
              << " failures\n";
    for (const auto& w : r.witnesses) std::cout << "  witness: " << w << "\n";
  }
  if (cases == 0) std::cout << "0 cases (vacuous pass)\n";
  return ok ? kOk : kInputError;
}

// ---------------------------------------------------------------------------
// Demos

int demo_counterexample(const fs::path& out) {
  namespace an = evfam::analysis;
  std::vector<evfam::cfp::Vector> xs;
  for (int n = 1; n <= 2000; ++n) xs.push_back(evfam::cfp::Vector::Constant(1, n % 2 == 0 ? n / 2 : -1.0));
  const auto est = an::cogap_limit_estimate(xs, an::kDefaultLadder, xs.size() / 2);
  std::cout << "x_{2n} = n, x_{2n-1} = -1, n <= 1000; tail from n = " << est.n0 + 1 << "\n";
  for (const auto& c : est.candidates) {
    std::cout << "candidate " << c.point[0] << ":";
    for (std::size_t k = 0; k < est.ladder.size(); ++k) std::cout << " eps=" << est.ladder[k] << " run=" << c.run_stats[k];
    std::cout << "; estimate " << c.estimate.to_string() << (c.exact ? "" : " (lower bound)") << "\n";
  }
  std::cout << (est.limit ? "classical limit exists" : "no classical limit") << "\n";
  write(out, "report.json", dump(evfam::io::to_json(est)));
  return kOk;
}

evfam::io::Problem two_halfspaces() {
  const json j = {{"dim", 2},
                  {"operators",
                   {{{"kind", "halfspace"}, {"a", {-1.0, 0.0}}, {"b", 0.0}},
                    {{"kind", "halfspace"}, {"a", {0.0, -1.0}}, {"b", 0.0}}}},
                  {"control", {{"kind", "cyclic"}}},
                  {"relaxation", {{"kind", "constant"}, {"value", 1.0}}},
                  {"x0", {-1.0, -1.0}},
                  {"stop", {{"tol", 1e-6}, {"max_iter", 100}, {"stride", 1}}}};
  return evfam::io::problem_from_json(j);
}

int demo_two_halfspaces(const fs::path& out) {
  const auto p = two_halfspaces();
  std::cout << "u1 >= 0, u2 >= 0 by cyclic projections from (-1, -1)\n";
  write(out, "problem.json", dump(evfam::io::to_json(p)));
  const int solved = solve(p, out);
  const auto trace = evfam::io::trace_from_jsonl(evfam::io::read_file(out / "trace.jsonl"));
  for (std::size_t n = 0; n < trace.iterates.size(); ++n)
    std::cout << "x" << n << " = (" << trace.iterates[n][0] << ", " << trace.iterates[n][1] << ")\n";
  const int analyzed = analyze(trace, p, {}, out);
  return solved != kOk ? solved : analyzed;
}

int demo_families_tour(const fs::path& out) {
  using evfam::Family;
  json tour = json::array();
  const std::vector<std::pair<std::string, Family>> fams = {
      {"H (cofinite sets)", Family::cofinite()},
      {"G (infinite sets)", Family::infinite()},
      {"coGap level 1", Family::cogap_level(1)},
      {"coGap level 2", Family::cogap_level(2)},
  };
  for (const auto& [label, f] : fams) {
    const auto r = evfam::classify(f, 0);
    std::cout << label << ": eventual=" << r.eventual.holds << " filter=" << r.filter.holds
              << " finitely-insensitive=" << r.finitely_insensitive.holds << "\n";
    if (!r.filter.holds) std::cout << "  not a filter: " << r.filter.witness << "\n";
    tour.push_back({{"family", evfam::io::to_json(f)}, {"label", label}, {"report", evfam::io::to_json(r)}});
  }
  // A sequence with one convergent and one oscillating point.
  const evfam::SetSequence seq(evfam::FiniteGround({"a", "b"}),
                               {evfam::EPSet::parse("prefix=0;period=1"), evfam::EPSet::parse("prefix=;period=10")});
  const auto cl = evfam::classical_limits(seq);
  std::cout << "A_n = {a, b} for odd n >= 3, {a} for even n: H-limit " << seq.ground().format(cl.liminf)
            << ", G-limit " << seq.ground().format(cl.limsup) << "\n";
  write(out, "families.json", dump({{"families", tour},
                                     {"sequence", evfam::io::to_json(seq)},
                                     {"h_limit", seq.ground().members(cl.liminf)},
                                     {"g_limit", seq.ground().members(cl.limsup)}}));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eventual families, set limits and the almost-cyclic sequential algorithm"};
  app.require_subcommand(1);

  fs::path out = ".";
  auto* solve_cmd = app.add_subcommand("solve", "Run ACSA on a problem; writes trace.jsonl and summary.json");
  fs::path problem_path;
  solve_cmd->add_option("problem", problem_path, "problem JSON")->required();
  solve_cmd->add_option("-o,--out", out, "output directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "Replay and certify a trace; writes report.json and runs.csv");
  fs::path trace_path;
  evfam::io::AnalyzeOptions aopt;
  long long window = 0, n0 = -1;
  double tol = 0.0;
  analyze_cmd->add_option("trace", trace_path, "trace JSONL")->required();
  analyze_cmd->add_option("problem", problem_path, "problem JSON")->required();
  analyze_cmd->add_option("-o,--out", out, "output directory");
  analyze_cmd->add_option("--eps", aopt.ladder, "strictly decreasing eps ladder");
  analyze_cmd->add_option("--window", window, "follows window c (default: control constant)")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--strict", aopt.strict, "witnesses must be unrelaxed steps x_{q+1} = T(x_q)");
  analyze_cmd->add_option("--n0", n0, "tail start (default: half the trace)")->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--tol", tol, "fixed-point tolerance (default: 10 x stop tol)")
      ->check(CLI::PositiveNumber);

  auto* check_cmd = app.add_subcommand("check", "Run property suites");
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t budget = 500;
  check_cmd->add_option("suite", suite, "intseq|families|multisets|setlimits|cfp|analysis|all")
      ->required()
      ->check(CLI::IsMember({"intseq", "families", "multisets", "setlimits", "cfp", "analysis", "all"}));
  check_cmd->add_option("--seed", seed, "random seed (EVFAM_SEED overrides)");
  check_cmd->add_option("--budget", budget, "random cases per property");

  auto* demo_cmd = app.add_subcommand("demo", "Reproduce a worked example");
  std::string demo;
  demo_cmd->add_option("name", demo, "counterexample|two-halfspaces|families-tour")
      ->required()
      ->check(CLI::IsMember({"counterexample", "two-halfspaces", "families-tour"}));
  demo_cmd->add_option("-o,--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  if (const char* env = std::getenv("EVFAM_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: EVFAM_SEED must be a nonnegative integer\n";
      return kInputError;
    }
  }

  try {
    if (*solve_cmd) return solve(load_problem(problem_path), out);
    if (*analyze_cmd) {
      const auto p = load_problem(problem_path);
      const auto trace = evfam::io::trace_from_jsonl(evfam::io::read_file(trace_path));
      if (window > 0) aopt.window = static_cast<std::size_t>(window);
      if (n0 >= 0) aopt.n0 = static_cast<std::size_t>(n0);
      if (tol > 0) aopt.tol = tol;
      return analyze(trace, p, aopt, out);
    }
    if (*check_cmd) return check(suite, seed, budget);
    if (*demo_cmd) {
      if (demo == "counterexample") return demo_counterexample(out);
      if (demo == "two-halfspaces") return demo_two_halfspaces(out);
      return demo_families_tour(out);
    }
  } catch (const evfam::io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const evfam::cfp::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
