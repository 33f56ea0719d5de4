#include <algorithm>
#include <cmath>
#include <sstream>

#include "evfam/cfp.hpp"

namespace evfam::cfp {

// ---------------------------------------------------------------------------
// Control

Control Control::cyclic(std::size_t m) {
  if (m == 0) throw std::invalid_argument("cyclic control: m must be positive");
  std::vector<std::size_t> pattern(m);
  for (std::size_t i = 0; i < m; ++i) pattern[i] = i;
  return Control(ControlKind::Cyclic, std::move(pattern));
}

Control Control::almost_cyclic(std::vector<std::size_t> pattern) {
  if (pattern.empty()) throw std::invalid_argument("almost-cyclic control: pattern must be nonempty");
  return Control(ControlKind::AlmostCyclic, std::move(pattern));
}

Control Control::explicit_list(std::vector<std::size_t> list) {
  if (list.empty()) throw std::invalid_argument("explicit control: list must be nonempty");
  return Control(ControlKind::Explicit, std::move(list));
}

std::size_t Control::at(std::size_t n) const {
  if (kind_ == ControlKind::Explicit) {
    if (n >= pattern_.size()) throw std::out_of_range("explicit control: index past the end of the list");
    return pattern_[n];
  }
  return pattern_[n % pattern_.size()];
}

std::optional<std::size_t> Control::length() const {
  if (kind_ == ControlKind::Explicit) return pattern_.size();
  return std::nullopt;
}

namespace {

// Shortest w such that entries start, start+1, ..., start+w-1 of `seq`
// (cyclically when `wrap`) cover 0..m-1; nullopt if impossible.
std::optional<std::size_t> cover_length(const std::vector<std::size_t>& seq, std::size_t start, std::size_t m,
                                        bool wrap) {
  std::vector<bool> seen(m, false);
  std::size_t missing = m;
  const std::size_t limit = wrap ? seq.size() : seq.size() - start;
  for (std::size_t w = 0; w < limit; ++w) {
    const std::size_t i = seq[(start + w) % seq.size()];
    if (!seen[i]) {
      seen[i] = true;
      if (--missing == 0) return w + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t control_validate(const Control& ctrl, std::size_t m, std::size_t horizon) {
  if (m == 0) throw std::invalid_argument("control_validate: m must be positive");
  std::vector<std::size_t> seq = ctrl.pattern();
  const bool periodic = ctrl.kind() != ControlKind::Explicit;
  if (!periodic) seq.resize(std::min(seq.size(), horizon));
  for (auto i : seq)
    if (i >= m) throw std::invalid_argument("control_validate: operator index " + std::to_string(i + 1) + " exceeds m");
  std::size_t c = m;
  bool any_window = false;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    const auto w = cover_length(seq, s, m, periodic);
    if (!w) {
      // A finite list ends; its trailing windows are cut short and do not
      // constrain c, but the first window must be complete.
      if (periodic || !any_window) throw std::invalid_argument("control_validate: some operator index never appears");
      break;
    }
    any_window = true;
    c = std::max(c, *w);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Relaxation

Relaxation::Relaxation(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("relaxation: at least one value required");
  for (double v : values_)
    if (!std::isfinite(v) || v < 0.0 || v > 2.0)
      throw std::invalid_argument("relaxation: every lambda must lie in [0, 2]");
}

Relaxation Relaxation::constant(double value) { return Relaxation({value}); }
Relaxation Relaxation::sequence(std::vector<double> values) { return Relaxation(std::move(values)); }
double Relaxation::inf() const { return *std::min_element(values_.begin(), values_.end()); }
double Relaxation::sup() const { return *std::max_element(values_.begin(), values_.end()); }

// ---------------------------------------------------------------------------
// ACSA

std::string to_string(RunStatus s) { return s == RunStatus::Converged ? "converged" : "iteration_cap"; }

double max_residual(std::span<const Operator> ops, const Vector& x) {
  double worst = 0.0;
  for (const auto& op : ops) worst = std::max(worst, op.residual(x));
  return worst;
}

Trace acsa_run(std::span<const Operator> ops, const Control& ctrl, const Relaxation& relax, const Vector& x0,
               const StopRule& stop) {
  if (ops.empty()) throw std::invalid_argument("acsa_run: operator list is empty");
  const std::size_t dim = ops.front().dim();
  for (const auto& op : ops)
    if (op.dim() != dim) throw std::invalid_argument("acsa_run: operators disagree on the dimension");
  if (static_cast<std::size_t>(x0.size()) != dim) throw std::invalid_argument("acsa_run: x0 has the wrong dimension");
  if (!x0.allFinite()) throw std::invalid_argument("acsa_run: x0 must be finite");
  if (stop.stride == 0) throw std::invalid_argument("acsa_run: checkpoint stride must be positive");
  for (auto i : ctrl.pattern())
    if (i >= ops.size()) throw std::invalid_argument("acsa_run: control refers to operator " + std::to_string(i + 1));

  std::size_t cap = stop.max_iter;
  if (auto len = ctrl.length()) cap = std::min(cap, *len);

  Trace trace;
  trace.iterates.push_back(x0);
  auto checkpoint = [&](std::size_t n) {
    const double r = max_residual(ops, trace.iterates.back());
    trace.checkpoints.push_back({n, r});
    return r <= stop.tol;
  };

  if (checkpoint(0)) {
    trace.status = RunStatus::Converged;
    return trace;
  }
  for (std::size_t n = 0; n < cap; ++n) {
    const Vector& x = trace.iterates.back();
    const std::size_t i = ctrl.at(n);
    const double lambda = relax.at(n);
    const Vector step = ops[i].apply(x) - x;
    Vector next = x + lambda * step;
    if (!next.allFinite()) {
      std::ostringstream msg;
      msg << "acsa_run: non-finite iterate at step " << n << " (operator " << i + 1 << ", lambda " << lambda << ")";
      throw NumericalError(msg.str());
    }
    trace.controls.push_back(i);
    trace.lambdas.push_back(lambda);
    trace.step_residuals.push_back(step.norm());
    trace.iterates.push_back(std::move(next));
    const std::size_t done = n + 1;
    if (done % stop.stride == 0 && checkpoint(done)) {
      trace.status = RunStatus::Converged;
      return trace;
    }
  }
  if (trace.checkpoints.back().n != trace.steps() && checkpoint(trace.steps())) {
    trace.status = RunStatus::Converged;
    return trace;
  }
  trace.status = RunStatus::IterationCap;
  return trace;
}

ReplayResult replay(const Trace& trace, std::span<const Operator> ops, double tol) {
  ReplayResult r;
  auto fail = [&](std::size_t n, std::string why) {
    r.ok = false;
    r.first_mismatch = n;
    r.detail = std::move(why);
    return r;
  };
  if (trace.iterates.size() != trace.steps() + 1 || trace.lambdas.size() != trace.steps())
    return fail(0, "trace lengths are inconsistent");
  for (std::size_t n = 0; n < trace.steps(); ++n) {
    const std::size_t i = trace.controls[n];
    if (i >= ops.size()) return fail(n, "operator index " + std::to_string(i + 1) + " out of range");
    const Vector& x = trace.iterates[n];
    if (static_cast<std::size_t>(x.size()) != ops[i].dim()) return fail(n, "iterate dimension mismatch");
    const Vector expected = x + trace.lambdas[n] * (ops[i].apply(x) - x);
    const double dev = (expected - trace.iterates[n + 1]).lpNorm<Eigen::Infinity>();
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > tol) return fail(n, "step " + std::to_string(n) + " deviates by " + std::to_string(dev));
  }
  return r;
}

std::size_t fejer_violations(const Trace& trace, const Vector& z, double tol) {
  std::size_t count = 0;
  for (std::size_t n = 0; n + 1 < trace.iterates.size(); ++n)
    if ((trace.iterates[n + 1] - z).norm() > (trace.iterates[n] - z).norm() + tol) ++count;
  return count;
}

}  // namespace evfam::cfp
