#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "evfam/analysis.hpp"
#include "evfam/cfp.hpp"
#include "evfam/multisets.hpp"
#include "evfam/setlimits.hpp"

namespace evfam::io {

using nlohmann::json;

/// Malformed or inconsistent input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(ExtNat v);
ExtNat extnat_from_json(const json& j);

json to_json(const EPSet& s);
EPSet epset_from_json(const json& j);

json to_json(const Ground& g);
Ground ground_from_json(const json& j);

json to_json(const Family& f);
Family family_from_json(const json& j);

json to_json(const FiniteTopology& t);
FiniteTopology topology_from_json(const json& j);

json to_json(const Multifamily& m);
/// `ground` supplies the ground of explicit tables when the object has none.
Multifamily multifamily_from_json(const json& j);

json to_json(const Multiset& m);

json to_json(const SetSequence& s);
SetSequence set_sequence_from_json(const json& j);

json to_json(const FamilyReport& r);

// ---------------------------------------------------------------------------
// Problems and traces

struct Problem {
  std::size_t dim = 0;
  std::vector<cfp::Operator> operators;
  cfp::Control control = cfp::Control::cyclic(1);
  cfp::Relaxation relaxation = cfp::Relaxation::constant(1.0);
  cfp::Vector x0;
  cfp::StopRule stop;
  /// Non-fatal remarks produced during ingestion.
  std::vector<std::string> warnings;
};

json to_json(const cfp::Operator& op);
cfp::Operator operator_from_json(const json& j, std::size_t dim);

json to_json(const Problem& p);
/// Validates the problem and rescales half-space and hyperplane data to unit
/// normals. Throws InputError.
Problem problem_from_json(const json& j);

/// One record per step, then a final record holding x_N and the status.
std::string trace_to_jsonl(const cfp::Trace& t);
cfp::Trace trace_from_jsonl(const std::string& text);

json summary_json(const cfp::Trace& t, const Problem& p);

json to_json(const analysis::FollowsReport& r);
json to_json(const analysis::LimitEstimate& e);
json to_json(const analysis::Certification& c);

struct AnalyzeOptions {
  std::vector<double> ladder = analysis::kDefaultLadder;
  /// Follows window; default is the control's covering constant.
  std::optional<std::size_t> window;
  bool strict = false;
  /// Tail start; default is half the trace.
  std::optional<std::size_t> n0;
  /// Fixed-point tolerance; default is 10 x the stopping tolerance.
  std::optional<double> tol;
};

struct Analysis {
  json report;
  analysis::CertStatus status = analysis::CertStatus::Inconclusive;
  std::vector<std::string> notes;
};

/// Replays `trace` against `p`, then runs the follows checks, the limit
/// estimate and certification. Certification clusters at
/// min(ladder.back(), tol). Throws InputError if the trace does not replay.
Analysis analyze_trace(const cfp::Trace& trace, const Problem& p, const AnalyzeOptions& opt = {});

/// CSV with columns n, i, lambda, res, dist_to_final.
std::string runs_csv(const cfp::Trace& trace);

std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

json parse_json(const std::string& text, const std::string& what);

}  // namespace evfam::io
