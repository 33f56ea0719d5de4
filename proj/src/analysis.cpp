#include "evfam/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace evfam::analysis {

FollowsReport follows_check(const Trace& trace, std::span<const Operator> ops, std::size_t op, bool relaxed,
                            std::size_t window, double tol, std::size_t first) {
  if (op >= ops.size()) throw std::invalid_argument("follows_check: operator index out of range");
  FollowsReport r;
  r.op = op;
  r.relaxed = relaxed;
  r.window = window;
  r.first = std::min(first, trace.steps());
  r.last = trace.steps();
  const Operator& t = ops[op];
  for (std::size_t q = r.first; q < r.last; ++q) {
    const Vector& x = trace.iterates[q];
    Vector expected = t.apply(x);
    if (relaxed) {
      expected = x + trace.lambdas[q] * (expected - x);
    } else if (trace.lambdas[q] != 1.0) {
      continue;
    }
    if ((trace.iterates[q + 1] - expected).norm() <= tol) r.witnesses.push_back(q);
  }
  if (r.first == r.last) {
    // No steps to cover: every window condition holds vacuously.
    r.min_c = 1;
    r.holds = window >= 1;
    return r;
  }
  if (r.witnesses.empty()) return r;
  // Longest witness-free stretch of steps, plus one.
  std::size_t free_run = r.witnesses.front() - r.first;
  for (std::size_t k = 1; k < r.witnesses.size(); ++k)
    free_run = std::max(free_run, r.witnesses[k] - r.witnesses[k - 1] - 1);
  free_run = std::max(free_run, r.last - 1 - r.witnesses.back());
  r.min_c = free_run + 1;
  r.holds = *r.min_c <= window;
  return r;
}

std::optional<std::pair<std::size_t, std::size_t>> witness_in(const FollowsReport& r, const EPSet& s) {
  for (auto q : r.witnesses)
    if (s.contains(q + 1) && s.contains(q + 2)) return std::make_pair(q, q + 1);
  return std::nullopt;
}

std::vector<Cluster> cluster_tail(std::span<const Vector> points, double eps, std::size_t n0) {
  std::vector<Cluster> clusters;
  std::size_t previous = SIZE_MAX;
  for (std::size_t n = n0; n < points.size(); ++n) {
    std::size_t k = 0;
    while (k < clusters.size() && (points[n] - clusters[k].center).norm() > eps) ++k;
    if (k == clusters.size()) clusters.push_back({points[n], points[n], {}, 0, 0});
    Cluster& c = clusters[k];
    if (previous != k) {
      ++c.visits;
      c.final_run = 0;
    }
    ++c.final_run;
    c.members.push_back(n);
    c.representative = points[n];
    previous = k;
  }
  // final_run is only meaningful for the cluster holding the last point.
  for (std::size_t k = 0; k < clusters.size(); ++k)
    if (k != previous) clusters[k].final_run = 0;
  return clusters;
}

std::vector<Vector> accumulation_points(std::span<const Vector> points, double eps, std::size_t n0) {
  std::vector<Vector> out;
  const std::size_t tail = n0 < points.size() ? points.size() - n0 : 0;
  for (auto& c : cluster_tail(points, eps, n0))
    if (c.visits >= 3 || (c.final_run >= 2 && 2 * c.final_run >= tail)) out.push_back(std::move(c.representative));
  return out;
}

namespace {

struct Runs {
  std::size_t largest = 0;
  std::size_t second = 0;
  std::size_t final_run = 0;
};

Runs runs_in_ball(std::span<const Vector> points, const Vector& x, double eps, std::size_t n0) {
  Runs r;
  std::size_t current = 0;
  auto close = [&] {
    if (current > r.largest) {
      r.second = r.largest;
      r.largest = current;
    } else if (current > r.second) {
      r.second = current;
    }
    current = 0;
  };
  for (std::size_t n = n0; n < points.size(); ++n) {
    if ((points[n] - x).norm() <= eps) {
      ++current;
    } else if (current > 0) {
      close();
    }
  }
  r.final_run = current;
  if (current > 0) close();
  return r;
}

}  // namespace

std::size_t recurring_run(std::span<const Vector> points, const Vector& x, double eps, std::size_t n0) {
  const Runs r = runs_in_ball(points, x, eps, n0);
  return std::max(r.second, r.largest / 2);
}

LimitEstimate cogap_limit_estimate(std::span<const Vector> points, const std::vector<double>& ladder,
                                   std::size_t n0) {
  if (ladder.empty()) throw std::invalid_argument("cogap_limit_estimate: empty eps ladder");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (!(ladder[k] > 0.0)) throw std::invalid_argument("cogap_limit_estimate: eps must be positive");
    if (k > 0 && !(ladder[k] < ladder[k - 1]))
      throw std::invalid_argument("cogap_limit_estimate: eps ladder must be strictly decreasing");
  }
  if (n0 >= points.size()) throw std::invalid_argument("cogap_limit_estimate: tail start past the end");
  LimitEstimate e;
  e.ladder = ladder;
  e.n0 = n0;
  const std::size_t tail = points.size() - n0;
  for (auto& y : accumulation_points(points, ladder.back(), n0)) {
    CandidateEstimate c;
    c.point = std::move(y);
    bool convergent = true;
    std::size_t lowest = SIZE_MAX;
    for (double eps : ladder) {
      const Runs r = runs_in_ball(points, c.point, eps, n0);
      const std::size_t stat = std::max(r.second, r.largest / 2);
      c.run_stats.push_back(stat);
      lowest = std::min(lowest, stat);
      if (2 * r.final_run < tail) convergent = false;
    }
    c.exact = convergent;
    c.estimate = convergent ? ExtNat::infinity() : ExtNat(lowest);
    e.candidates.push_back(std::move(c));
  }
  if (e.candidates.size() == 1 && e.candidates.front().exact) e.limit = e.candidates.front().point;
  return e;
}

std::optional<Vector> classical_limit(const LimitEstimate& e) { return e.limit; }

std::string to_string(CertStatus s) {
  switch (s) {
    case CertStatus::Certified: return "certified";
    case CertStatus::Inconclusive: return "inconclusive";
    case CertStatus::Violation: return "violation";
  }
  return "?";
}

Certification certify_fixed_points(const Trace& trace, std::span<const Operator> ops, double eps, std::size_t n0,
                                   double tol) {
  Certification cert;
  if (trace.iterates.empty()) {
    cert.notes.push_back("empty trace");
    return cert;
  }
  if (n0 < trace.iterates.size()) cert.candidates = accumulation_points(trace.iterates, eps, n0);
  if (trace.status == cfp::RunStatus::Converged) {
    const Vector& last = trace.final_point();
    const bool known = std::any_of(cert.candidates.begin(), cert.candidates.end(),
                                   [&](const Vector& y) { return y == last; });
    if (!known) cert.candidates.push_back(last);
  }
  bool missing_follows = false;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    cert.follows.push_back(follows_check(trace, ops, i, true, trace.steps()));
    if (!cert.follows.back().min_c) {
      missing_follows = true;
      cert.notes.push_back("operator " + std::to_string(i + 1) + " has no witness step");
    }
  }
  bool violated = false;
  for (std::size_t k = 0; k < cert.candidates.size(); ++k) {
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (!cert.follows[i].min_c) continue;
      FixCheck fc;
      fc.candidate = k;
      fc.op = i;
      fc.residual = ops[i].residual(cert.candidates[k]);
      fc.ok = fc.residual <= tol;
      violated |= !fc.ok;
      cert.checks.push_back(fc);
    }
  }
  if (cert.candidates.empty()) cert.notes.push_back("no accumulation point in the analyzed tail");
  if (violated)
    cert.status = CertStatus::Violation;
  else if (cert.candidates.empty() || missing_follows)
    cert.status = CertStatus::Inconclusive;
  else
    cert.status = CertStatus::Certified;
  return cert;
}

}  // namespace evfam::analysis
