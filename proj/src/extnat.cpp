#include "evfam/extnat.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace evfam {

std::uint64_t ExtNat::value() const {
  if (is_infinite()) throw std::domain_error("ExtNat: value() of infinity");
  return value_;
}

std::string ExtNat::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(value_);
}

ExtNat ExtNat::parse(std::string_view text) {
  if (text == "inf" || text == "∞") return infinity();
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw std::invalid_argument("ExtNat: cannot parse '" + std::string(text) + "'");
  return ExtNat(v);
}

std::ostream& operator<<(std::ostream& os, ExtNat v) { return os << v.to_string(); }

}  // namespace evfam
