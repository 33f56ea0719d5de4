#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "evfam/ground.hpp"
#include "evfam/topology.hpp"

namespace evfam {

class Multifamily;

enum class FamilyKind { Empty, All, Cofinite, Infinite, CoGapLevel, Indicator, Predicate, Pushed, Level };

/// Monotonicity of a family or multifamily under inclusion. Increasing
/// corresponds to an eventual family, Decreasing to a co-eventual one.
enum class Direction { Increasing, Decreasing, Constant, Unknown };

std::string to_string(FamilyKind k);
std::string to_string(Direction d);

/// f: X -> Y between finite grounds, as the image index of every x.
struct FiniteMap {
  FiniteGround domain;
  FiniteGround codomain;
  std::vector<std::size_t> image;
};

/// An eventually periodic sequence (x_n), n >= 1, with values in a finite
/// ground: x_n = prefix[n-1] for n <= |prefix|, then period repeats.
struct SequenceMap {
  FiniteGround codomain;
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> period;

  std::size_t at(Index n) const;
};

using PointMap = std::variant<FiniteMap, SequenceMap>;

Ground domain_of(const PointMap& f);
const FiniteGround& codomain_of(const PointMap& f);
/// f^{-1}(s) as a subset of the domain.
SetRep preimage(const PointMap& f, Subset s);
/// Throws std::invalid_argument if indices are out of range or the sequence
/// has no period.
void validate(const PointMap& f);

using SetPredicate = std::function<bool(const SetRep&)>;

/// A family of subsets of a ground set.
///
/// Symbolic kinds over the naturals (cofinite sets H, infinite sets G,
/// coGap level families) are evaluated exactly on EPSets. Indicator lists
/// live on finite grounds. Predicates are opaque and only ever sampled.
/// Values are immutable and cheap to copy.
class Family {
 public:
  static Family empty(Ground ground = Naturals{});
  static Family all(Ground ground = Naturals{});
  /// H: subsets of the naturals with finite complement.
  static Family cofinite();
  /// G: infinite subsets of the naturals.
  static Family infinite();
  /// {S : cogap(S) >= c}, c >= 1.
  static Family cogap_level(ExtNat c);
  static Family indicator(FiniteGround ground, std::vector<Subset> sets);
  static Family predicate(Ground ground, SetPredicate test, Direction declared);
  static Family pushed(PointMap f, Family inner);
  /// {S : m(S) >= c}; see level_family() for the checked entry point.
  static Family level(Multifamily m, ExtNat c);

  FamilyKind kind() const;
  const Ground& ground() const;

  /// S ∈ F. Throws std::invalid_argument when the representation does not
  /// match the ground.
  bool contains(const SetRep& s) const;

  /// Membership is computed exactly (no opaque predicate anywhere inside).
  bool is_exact() const;
  /// Declared direction of a predicate family; Unknown for other kinds.
  Direction declared_direction() const;

  /// Threshold c of CoGapLevel and Level kinds.
  ExtNat threshold() const;
  /// Member sets of an Indicator family, sorted.
  const std::vector<Subset>& sets() const;
  const PointMap& push_map() const;
  const Family& inner() const;
  const Multifamily& multifamily() const;

  std::string describe() const;

 private:
  struct Node;
  explicit Family(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Evidence { Exact, Sampled };

struct Verdict {
  bool holds = false;
  Evidence evidence = Evidence::Exact;
  /// Counterexample when `holds` is false.
  std::string witness;
};

struct FamilyReport {
  Verdict eventual;
  Verdict co_eventual;
  Verdict filter;
  Verdict finitely_insensitive;
  /// Number of sampled or enumerated cases examined.
  std::size_t cases = 0;
};

inline constexpr std::size_t kDefaultSampleBudget = 1000;

/// Classifies F: exact for symbolic kinds and for exactly evaluable families
/// on finite grounds (exhaustive), sampled for predicates.
FamilyReport classify(const Family& f, std::size_t budget = kDefaultSampleBudget, std::uint64_t seed = 0);

/// Whether F is co-eventual exactly when its complement family 2^X \ F is
/// eventual, by exhaustive enumeration over a finite ground.
bool complement_duality_check(const Family& f);

/// Indicator family 2^X \ F for F on a finite ground.
Family complement_family(const Family& f);

/// Star(F) = {x : {x} ∈ F}. EPSet for the naturals, Subset otherwise.
SetRep star(const Family& f);

/// Push(f, F) = {S ⊆ Y : f^{-1}(S) ∈ F}.
Family push(const PointMap& f, const Family& family);

/// Points x such that every open U ∋ x belongs to F.
Subset limit_set(const Family& f, const FiniteTopology& t);

/// cl F = {S : every open U ⊇ S belongs to F}, as an indicator family.
Family closure_family(const Family& f, const FiniteTopology& t);

/// Indicator list of every S ∈ F over a finite ground.
std::vector<Subset> enumerate_members(const Family& f);

}  // namespace evfam
