#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evfam/cfp.hpp"
#include "evfam/epset.hpp"
#include "evfam/extnat.hpp"

namespace evfam::analysis {

using cfp::Operator;
using cfp::Trace;
using cfp::Vector;

inline constexpr double kWitnessTolerance = 1e-9;

/// A witness pair: x_{q+1} = T(x_q) (relaxed by lambda_q in relaxed mode).
struct FollowsReport {
  std::size_t op = 0;
  bool relaxed = true;
  /// Steps q searched, [first, last).
  std::size_t first = 0;
  std::size_t last = 0;
  std::vector<std::size_t> witnesses;
  /// Smallest c such that every c consecutive steps in the range hold a
  /// witness step, i.e. every window of c + 1 iterates holds a pair. An
  /// empty range gives 1; a range without witnesses gives nullopt.
  std::optional<std::size_t> min_c;
  std::size_t window = 0;
  bool holds = false;

  std::string criterion() const { return relaxed ? "relaxed-adjacent" : "strict-adjacent"; }
};

/// Checks operator ops[op] against the steps of `trace` in [first, trace.steps()).
/// `holds` is min_c <= window.
FollowsReport follows_check(const Trace& trace, std::span<const Operator> ops, std::size_t op, bool relaxed,
                            std::size_t window, double tol = kWitnessTolerance, std::size_t first = 0);

/// A witness pair (q, q + 1) with both indices in S, where iterate n stands for
/// the natural number n + 1. nullopt if none is recorded.
std::optional<std::pair<std::size_t, std::size_t>> witness_in(const FollowsReport& r, const EPSet& s);

struct Cluster {
  Vector center;
  /// Last tail point assigned to the cluster.
  Vector representative;
  std::vector<std::size_t> members;
  /// Number of maximal runs of consecutive indices inside the cluster.
  std::size_t visits = 0;
  std::size_t final_run = 0;
};

/// Greedy eps-clustering of points[n], n >= n0: each point joins the first
/// cluster whose center lies within eps, else opens a new one.
std::vector<Cluster> cluster_tail(std::span<const Vector> points, double eps, std::size_t n0);

/// Representatives of clusters entered at least three times, or holding a
/// final run of length >= 2 that covers at least half the tail. A short
/// final run is usually one operator that happens to fix the iterate.
std::vector<Vector> accumulation_points(std::span<const Vector> points, double eps, std::size_t n0);

inline const std::vector<double> kDefaultLadder = {1e-1, 1e-2, 1e-3, 1e-4};

struct CandidateEstimate {
  Vector point;
  /// Per eps: the largest L such that two disjoint runs of L consecutive tail
  /// indices lie in the ball.
  std::vector<std::size_t> run_stats;
  /// Min over the ladder; exact only for a convergent tail (then infinity).
  ExtNat estimate;
  bool exact = false;
};

struct LimitEstimate {
  std::vector<double> ladder;
  std::size_t n0 = 0;
  std::vector<CandidateEstimate> candidates;
  /// Present iff there is one candidate and the tail converges to it.
  std::optional<Vector> limit;
};

/// Throws std::invalid_argument for an empty or non-decreasing ladder, or
/// n0 past the end. Candidates come from the finest eps.
LimitEstimate cogap_limit_estimate(std::span<const Vector> points, const std::vector<double>& ladder,
                                   std::size_t n0);

/// Recurring-run statistic of the index set {n >= n0 : ||points[n] - x|| <= eps}.
std::size_t recurring_run(std::span<const Vector> points, const Vector& x, double eps, std::size_t n0);

std::optional<Vector> classical_limit(const LimitEstimate& e);

enum class CertStatus { Certified, Inconclusive, Violation };

std::string to_string(CertStatus s);

struct FixCheck {
  std::size_t candidate = 0;
  std::size_t op = 0;
  double residual = 0.0;
  bool ok = true;
};

struct Certification {
  CertStatus status = CertStatus::Inconclusive;
  std::vector<Vector> candidates;
  std::vector<FollowsReport> follows;
  std::vector<FixCheck> checks;
  std::vector<std::string> notes;
};

/// For each candidate y and each operator with a finite follows min_c
/// (relaxed mode, whole trace), requires ||T_i(y) - y|| <= tol. Candidates
/// are the accumulation points at eps, plus the final iterate of a
/// converged run. A candidate is only located to within eps, so eps should
/// not exceed tol.
Certification certify_fixed_points(const Trace& trace, std::span<const Operator> ops, double eps, std::size_t n0,
                                   double tol);

}  // namespace evfam::analysis
