#include "evfam/setlimits.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace evfam {

SetSequence::SetSequence(FiniteGround ground, std::vector<EPSet> traces)
    : ground_(std::move(ground)), traces_(std::move(traces)) {
  if (traces_.size() != ground_.size()) throw std::invalid_argument("SetSequence: one trace per ground element required");
}

SetSequence SetSequence::from_sets(FiniteGround ground, const std::vector<Subset>& prefix,
                                   const std::vector<Subset>& period) {
  if (period.empty()) throw std::invalid_argument("SetSequence: the repeating part must be nonempty");
  std::vector<EPSet> traces;
  for (std::size_t x = 0; x < ground.size(); ++x) {
    std::vector<bool> p(prefix.size()), q(period.size());
    for (std::size_t n = 0; n < prefix.size(); ++n) p[n] = prefix[n].contains(x);
    for (std::size_t n = 0; n < period.size(); ++n) q[n] = period[n].contains(x);
    traces.emplace_back(std::move(p), std::move(q));
  }
  return SetSequence(std::move(ground), std::move(traces));
}

Subset SetSequence::at(Index n) const {
  Subset s;
  for (std::size_t x = 0; x < traces_.size(); ++x)
    if (traces_[x].contains(n)) s = s.with(x);
  return s;
}

std::size_t SetSequence::horizon() const {
  std::size_t h = 0;
  for (const auto& t : traces_) h = std::max(h, t.horizon());
  return h;
}

Subset e_limit(const Family& e, const SetSequence& seq) {
  if (!is_naturals(e.ground())) throw std::invalid_argument("e_limit: family must live on the naturals");
  if (!e.is_exact()) throw std::invalid_argument("e_limit: family over the naturals is not exactly evaluable");
  Subset out;
  for (std::size_t x = 0; x < seq.ground().size(); ++x)
    if (e.contains(seq.trace(x))) out = out.with(x);
  return out;
}

ClassicalLimits classical_limits(const SetSequence& seq) {
  ClassicalLimits r;
  r.limsup = e_limit(Family::infinite(), seq);
  r.liminf = e_limit(Family::cofinite(), seq);
  if (r.limsup == r.liminf) r.lim = r.limsup;
  return r;
}

std::string to_string(LimitTheoremCheck::Status s) {
  switch (s) {
    case LimitTheoremCheck::Status::Holds: return "holds";
    case LimitTheoremCheck::Status::Violated: return "violated";
    case LimitTheoremCheck::Status::PreconditionUnmet: return "precondition_unmet";
  }
  return "?";
}

LimitTheoremCheck verify_limit_theorem(const SetSequence& seq, const Family& e) {
  LimitTheoremCheck r;
  const auto limits = classical_limits(seq);
  r.lim = limits.lim;
  if (!limits.lim) {
    r.detail = "classical limit does not exist";
    return r;
  }
  if (!is_naturals(e.ground()) || !e.is_exact()) {
    r.detail = "family is not an exactly evaluable family over the naturals";
    return r;
  }
  if (e.kind() == FamilyKind::Empty || e.kind() == FamilyKind::All || e.contains(EPSet::empty()) ||
      !e.contains(EPSet::naturals())) {
    r.detail = "family is trivial";
    return r;
  }
  const auto report = classify(e, 0);
  if (!report.eventual.holds || report.eventual.evidence != Evidence::Exact) {
    r.detail = "family is not known to be eventual";
    return r;
  }
  if (!report.finitely_insensitive.holds || report.finitely_insensitive.evidence != Evidence::Exact) {
    r.detail = "family is not known to be finitely-insensitive";
    return r;
  }
  r.e_limit = e_limit(e, seq);
  if (r.e_limit == *limits.lim) {
    r.status = LimitTheoremCheck::Status::Holds;
    return r;
  }
  r.status = LimitTheoremCheck::Status::Violated;
  r.detail = "E-limit " + seq.ground().format(r.e_limit) + " differs from limit " + seq.ground().format(*limits.lim);
  return r;
}

}  // namespace evfam
