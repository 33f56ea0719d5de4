#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "evfam/epset.hpp"

namespace evfam {

/// Largest finite ground set the exhaustive algorithms accept.
inline constexpr std::size_t kMaxGroundSize = 12;

/// A subset of a finite ground set, as a bitmask over element positions.
struct Subset {
  std::uint32_t bits = 0;

  bool contains(std::size_t i) const { return (bits >> i) & 1U; }
  Subset with(std::size_t i) const { return {bits | (1U << i)}; }
  Subset without(std::size_t i) const { return {bits & ~(1U << i)}; }
  bool is_subset_of(Subset other) const { return (bits & ~other.bits) == 0; }
  bool empty() const { return bits == 0; }
  std::size_t size() const;

  friend Subset operator|(Subset a, Subset b) { return {a.bits | b.bits}; }
  friend Subset operator&(Subset a, Subset b) { return {a.bits & b.bits}; }
  friend auto operator<=>(Subset, Subset) = default;
};

/// A finite ground set X with named elements.
class FiniteGround {
 public:
  FiniteGround() = default;
  explicit FiniteGround(std::vector<std::string> names);

  /// Ground {x1, ..., xn}.
  static FiniteGround of_size(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Throws std::out_of_range for unknown names.
  std::size_t index_of(const std::string& name) const;

  Subset full() const { return {size() == 32 ? ~0U : ((1U << size()) - 1U)}; }
  Subset complement(Subset s) const { return {full().bits & ~s.bits}; }
  /// Number of subsets, 2^|X|.
  std::uint32_t subset_count() const { return 1U << size(); }

  Subset subset(const std::vector<std::string>& members) const;
  std::vector<std::string> members(Subset s) const;
  std::string format(Subset s) const;

  friend bool operator==(const FiniteGround&, const FiniteGround&) = default;

 private:
  std::vector<std::string> names_;
};

/// The positive integers as a ground set.
struct Naturals {
  friend bool operator==(Naturals, Naturals) = default;
};

using Ground = std::variant<Naturals, FiniteGround>;

/// A subset of a ground: an EPSet over the naturals, a bitmask otherwise.
using SetRep = std::variant<EPSet, Subset>;

inline bool is_naturals(const Ground& g) { return std::holds_alternative<Naturals>(g); }
/// Throws std::invalid_argument when `g` is the naturals.
const FiniteGround& finite_ground(const Ground& g);
std::string format(const Ground& g, const SetRep& s);

}  // namespace evfam
