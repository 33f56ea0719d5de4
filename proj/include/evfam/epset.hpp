#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evfam/extnat.hpp"

namespace evfam {

/// Positions in the positive integers 1, 2, 3, ...
using Index = std::uint64_t;

/// An eventually periodic subset of the positive integers.
///
/// Membership of index n (n >= 1) is read from bit n-1 of the prefix while
/// n <= p, and from period[(n - 1 - p) mod q] afterwards. An empty period
/// means the set is finite. The value is kept in canonical form: the period
/// is primitive, an all-zero period is stored as the empty period, and the
/// prefix is as short as possible. Two EPSets are equal iff they have the
/// same members.
class EPSet {
 public:
  EPSet() = default;
  EPSet(std::vector<bool> prefix, std::vector<bool> period);

  static EPSet empty() { return {}; }
  static EPSet naturals() { return {{}, {true}}; }
  static EPSet finite(std::span<const Index> members);
  static EPSet finite(std::initializer_list<Index> members);
  /// Every n >= 1 with n mod modulus == residue.
  static EPSet residue_class(Index modulus, Index residue);

  /// Parses "prefix=101;period=01" (leftmost bit is index 1).
  static EPSet parse(std::string_view text);
  std::string to_string() const;

  bool contains(Index n) const;
  bool is_finite() const { return period_.empty(); }
  bool is_cofinite() const;

  const std::vector<bool>& prefix() const { return prefix_; }
  const std::vector<bool>& period() const { return period_; }
  /// p + q of the canonical form; membership is determined by 1..horizon.
  std::size_t horizon() const { return prefix_.size() + period_.size(); }

  EPSet complement() const;
  /// (S ∪ add) \ remove. Throws std::invalid_argument if add and remove meet.
  EPSet finitely_change(std::span<const Index> add, std::span<const Index> remove) const;
  EPSet unite(const EPSet& other) const;
  EPSet intersect(const EPSet& other) const;
  bool is_subset_of(const EPSet& other) const;

  /// lim sup of (n_{k+1} - n_k - 1) over consecutive members; infinity for
  /// finite sets.
  ExtNat gap() const;
  /// gap() of the complement: the recurring run length of members.
  ExtNat cogap() const;

  friend bool operator==(const EPSet&, const EPSet&) = default;

 private:
  void canonicalize();

  std::vector<bool> prefix_;
  std::vector<bool> period_;
};

std::ostream& operator<<(std::ostream& os, const EPSet& s);

}  // namespace evfam
