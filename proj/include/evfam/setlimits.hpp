#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evfam/families.hpp"

namespace evfam {

/// A sequence (A_n), n >= 1, of subsets of a finite ground, stored per
/// element: trace(x) = {n : x ∈ A_n}.
class SetSequence {
 public:
  SetSequence(FiniteGround ground, std::vector<EPSet> traces);

  /// A_1..A_p given by `prefix`, then `period` repeating forever.
  static SetSequence from_sets(FiniteGround ground, const std::vector<Subset>& prefix, const std::vector<Subset>& period);

  const FiniteGround& ground() const { return ground_; }
  const EPSet& trace(std::size_t x) const { return traces_.at(x); }
  const std::vector<EPSet>& traces() const { return traces_; }
  /// A_n.
  Subset at(Index n) const;
  /// Largest trace horizon p + q.
  std::size_t horizon() const;

 private:
  FiniteGround ground_;
  std::vector<EPSet> traces_;
};

/// E-lim A_n = {x : trace(x) ∈ E}. E must be an exactly evaluable family over
/// the naturals.
Subset e_limit(const Family& e, const SetSequence& seq);

struct ClassicalLimits {
  Subset limsup;
  Subset liminf;
  std::optional<Subset> lim;
};

ClassicalLimits classical_limits(const SetSequence& seq);

struct LimitTheoremCheck {
  enum class Status { Holds, Violated, PreconditionUnmet };
  Status status = Status::PreconditionUnmet;
  std::string detail;
  Subset e_limit;
  std::optional<Subset> lim;
};

std::string to_string(LimitTheoremCheck::Status s);

/// Checks E-lim A_n = lim A_n when the classical limit exists and E is an
/// exactly known, eventual, finitely-insensitive, nontrivial family. Unmet
/// preconditions are reported, not thrown.
LimitTheoremCheck verify_limit_theorem(const SetSequence& seq, const Family& e);

}  // namespace evfam
