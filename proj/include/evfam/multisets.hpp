#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "evfam/families.hpp"

namespace evfam {

/// A multiset on a finite ground: multiplicity per element (0 = absent).
struct Multiset {
  FiniteGround ground;
  std::vector<ExtNat> mult;

  ExtNat at(std::size_t i) const { return mult.at(i); }
  ExtNat at(const std::string& name) const { return mult.at(ground.index_of(name)); }
  Subset support() const;

  friend bool operator==(const Multiset&, const Multiset&) = default;
};

enum class MultifamilyKind { Gap, CoGap, Indicator, Complement, Explicit, Pushed, Predicate };

std::string to_string(MultifamilyKind k);

using MultiplicityFn = std::function<ExtNat(const SetRep&)>;

/// A multiset in the powerset of a ground: a representing function from
/// subsets to {0, 1, ..., inf}.
class Multifamily {
 public:
  /// Gap on the naturals (decreasing).
  static Multifamily gap();
  /// coGap = Gap^c on the naturals (increasing).
  static Multifamily cogap();
  /// Values 1 on members of F, 0 elsewhere.
  static Multifamily indicator(Family f);
  /// S -> inner(S^c).
  static Multifamily complement_of(Multifamily inner);
  /// Finite table over a finite ground; unlisted subsets have value 0.
  static Multifamily explicit_table(FiniteGround ground, std::vector<std::pair<Subset, ExtNat>> table);
  static Multifamily pushed(PointMap f, Multifamily inner);
  static Multifamily predicate(Ground ground, MultiplicityFn fn, Direction declared);

  MultifamilyKind kind() const;
  const Ground& ground() const;
  ExtNat value(const SetRep& s) const;
  bool is_exact() const;

  /// Known direction: fixed for Gap/CoGap, flipped through complements,
  /// carried through pushes, computed exhaustively for explicit tables,
  /// declared for predicates.
  Direction monotonicity() const;

  const Multifamily& inner() const;
  const Family& family() const;
  const PointMap& push_map() const;
  /// Explicit table entries with nonzero value, sorted by subset.
  const std::vector<std::pair<Subset, ExtNat>>& table() const;

  std::string describe() const;

 private:
  struct Node;
  explicit Multifamily(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct MultifamilyReport {
  Verdict increasing;
  Verdict decreasing;
  Verdict finitely_insensitive;
  std::size_t cases = 0;
};

/// M^c with M^c(S) = M(S^c).
Multifamily mf_complement(const Multifamily& m);

/// φ_M(S).
ExtNat mf_value(const Multifamily& m, const SetRep& s);

/// {S : φ_M(S) >= c}. Throws std::invalid_argument for c = 0.
Family level_family(const Multifamily& m, ExtNat c);

MultifamilyReport mf_classify(const Multifamily& m, std::size_t budget = kDefaultSampleBudget, std::uint64_t seed = 0);

/// Star(M): multiplicity of x is φ_M({x}).
Multiset mstar(const Multifamily& m);

Multifamily mpush(const PointMap& f, const Multifamily& m);

/// cl M: φ(S) = min{φ_M(U) : U open, S ⊆ U}, tabulated. M must be increasing.
Multifamily mf_closure(const Multifamily& m, const FiniteTopology& t);

/// lim M: multiplicity of x is min{φ_M(U) : U open, x ∈ U}. Throws
/// std::invalid_argument unless M is increasing.
Multiset multiset_limit(const Multifamily& m, const FiniteTopology& t);

}  // namespace evfam
