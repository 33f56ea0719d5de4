#pragma once

#include <random>
#include <vector>

#include "evfam/ground.hpp"

namespace evfam {

/// A topology on a finite ground set, stored as its list of open sets.
///
/// Construction validates that the opens contain the empty set and the
/// ground, and are closed under pairwise union and intersection.
class FiniteTopology {
 public:
  FiniteTopology(FiniteGround ground, std::vector<Subset> opens);

  static FiniteTopology discrete(const FiniteGround& ground);
  static FiniteTopology indiscrete(const FiniteGround& ground);
  /// Smallest topology containing `subbase`.
  static FiniteTopology generated_by(const FiniteGround& ground, const std::vector<Subset>& subbase);

  const FiniteGround& ground() const { return ground_; }
  /// Sorted by bitmask.
  const std::vector<Subset>& opens() const { return opens_; }
  bool is_open(Subset s) const;
  bool is_closed(Subset s) const { return is_open(ground_.complement(s)); }
  /// Any two distinct points have disjoint open neighborhoods.
  bool is_hausdorff() const;

  friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;

 private:
  FiniteGround ground_;
  std::vector<Subset> opens_;
};

/// Every topology on `ground` (|ground| <= 4), by filtering all candidate
/// families of subsets.
std::vector<FiniteTopology> all_topologies(const FiniteGround& ground);

/// Topology generated by `subbase_size` random subsets.
FiniteTopology random_topology(const FiniteGround& ground, std::size_t subbase_size, std::mt19937_64& rng);

}  // namespace evfam
