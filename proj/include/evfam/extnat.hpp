#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>

namespace evfam {

/// An extended natural number: 0, 1, 2, ... or infinity.
///
/// Infinity compares greater than every finite value. Only min/max style
/// operations are meaningful; there is deliberately no arithmetic.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v == kInf ? kInf - 1 : v) {}  // NOLINT: implicit by intent

  static constexpr ExtNat infinity() {
    ExtNat r;
    r.value_ = kInf;
    return r;
  }

  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr bool is_finite() const { return value_ != kInf; }

  /// Finite value; throws std::domain_error for infinity.
  std::uint64_t value() const;

  friend constexpr auto operator<=>(ExtNat a, ExtNat b) = default;

  std::string to_string() const;

  /// Accepts decimal digits or "inf".
  static ExtNat parse(std::string_view text);

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

std::ostream& operator<<(std::ostream& os, ExtNat v);

}  // namespace evfam
