#include "evfam/ground.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace evfam {

std::size_t Subset::size() const { return static_cast<std::size_t>(std::popcount(bits)); }

FiniteGround::FiniteGround(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxGroundSize)
    throw std::invalid_argument("FiniteGround: at most " + std::to_string(kMaxGroundSize) + " elements supported");
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw std::invalid_argument("FiniteGround: duplicate element names");
}

FiniteGround FiniteGround::of_size(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return FiniteGround(std::move(names));
}

std::size_t FiniteGround::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("FiniteGround: unknown element '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

Subset FiniteGround::subset(const std::vector<std::string>& members) const {
  Subset s;
  for (const auto& m : members) s = s.with(index_of(m));
  return s;
}

std::vector<std::string> FiniteGround::members(Subset s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (s.contains(i)) out.push_back(names_[i]);
  return out;
}

std::string FiniteGround::format(Subset s) const {
  std::string out = "{";
  bool first = true;
  for (const auto& m : members(s)) {
    if (!first) out += ",";
    out += m;
    first = false;
  }
  return out + "}";
}

const FiniteGround& finite_ground(const Ground& g) {
  if (const auto* fg = std::get_if<FiniteGround>(&g)) return *fg;
  throw std::invalid_argument("expected a finite ground set");
}

std::string format(const Ground& g, const SetRep& s) {
  if (const auto* ep = std::get_if<EPSet>(&s)) return ep->to_string();
  const auto sub = std::get<Subset>(s);
  if (const auto* fg = std::get_if<FiniteGround>(&g)) return fg->format(sub);
  return "bits:" + std::to_string(sub.bits);
}

}  // namespace evfam
