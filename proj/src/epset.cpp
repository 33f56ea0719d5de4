#include "evfam/epset.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace evfam {

namespace {

// Length of the shortest word u with w = u^k.
std::size_t primitive_root_length(const std::vector<bool>& w) {
  const std::size_t q = w.size();
  if (q == 0) return 0;
  std::vector<std::size_t> border(q, 0);
  for (std::size_t i = 1, k = 0; i < q; ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k - 1];
    if (w[i] == w[k]) ++k;
    border[i] = k;
  }
  const std::size_t d = q - border[q - 1];
  return q % d == 0 ? d : q;
}

std::vector<bool> parse_bits(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch == '0') {
      bits.push_back(false);
    } else if (ch == '1') {
      bits.push_back(true);
    } else {
      throw std::invalid_argument("EPSet: bit strings may contain only 0 and 1");
    }
  }
  return bits;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Canonical EPSet whose membership is `transform`, read through a prefix of
// length p and a period of length q.
EPSet relayout(std::size_t p, std::size_t q, auto&& transform) {
  std::vector<bool> prefix(p), period(q);
  for (std::size_t i = 0; i < p; ++i) prefix[i] = transform(i + 1);
  for (std::size_t k = 0; k < q; ++k) period[k] = transform(p + k + 1);
  return EPSet(std::move(prefix), std::move(period));
}

}  // namespace

EPSet::EPSet(std::vector<bool> prefix, std::vector<bool> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  canonicalize();
}

void EPSet::canonicalize() {
  if (std::none_of(period_.begin(), period_.end(), [](bool b) { return b; })) period_.clear();
  if (const std::size_t d = primitive_root_length(period_); d < period_.size()) period_.resize(d);

  if (period_.empty()) {
    while (!prefix_.empty() && !prefix_.back()) prefix_.pop_back();
    return;
  }
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    prefix_.pop_back();
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
  }
}

EPSet EPSet::finite(std::span<const Index> members) {
  Index top = 0;
  for (Index n : members) {
    if (n == 0) throw std::invalid_argument("EPSet: indices start at 1");
    top = std::max(top, n);
  }
  std::vector<bool> prefix(top, false);
  for (Index n : members) prefix[n - 1] = true;
  return EPSet(std::move(prefix), {});
}

EPSet EPSet::finite(std::initializer_list<Index> members) {
  return finite(std::span<const Index>(members.begin(), members.size()));
}

EPSet EPSet::residue_class(Index modulus, Index residue) {
  if (modulus == 0) throw std::invalid_argument("EPSet: modulus must be positive");
  std::vector<bool> period(modulus, false);
  // Period starts at index 1.
  for (Index k = 0; k < modulus; ++k) period[k] = ((k + 1) % modulus) == (residue % modulus);
  return EPSet({}, std::move(period));
}

EPSet EPSet::parse(std::string_view text) {
  text = trim(text);
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw std::invalid_argument("EPSet: expected 'prefix=...;period=...'");
  std::string_view left = trim(text.substr(0, semi));
  std::string_view right = trim(text.substr(semi + 1));
  constexpr std::string_view kPrefix = "prefix=";
  constexpr std::string_view kPeriod = "period=";
  if (!left.starts_with(kPrefix) || !right.starts_with(kPeriod))
    throw std::invalid_argument("EPSet: expected 'prefix=...;period=...'");
  left.remove_prefix(kPrefix.size());
  right.remove_prefix(kPeriod.size());
  if (right.size() >= 2 && right.front() == '"' && right.back() == '"') right = right.substr(1, right.size() - 2);
  return EPSet(parse_bits(trim(left)), parse_bits(trim(right)));
}

std::string EPSet::to_string() const {
  std::string out = "prefix=";
  for (bool b : prefix_) out.push_back(b ? '1' : '0');
  out += ";period=";
  for (bool b : period_) out.push_back(b ? '1' : '0');
  return out;
}

bool EPSet::contains(Index n) const {
  if (n == 0) return false;
  const Index i = n - 1;
  if (i < prefix_.size()) return prefix_[i];
  if (period_.empty()) return false;
  return period_[(i - prefix_.size()) % period_.size()];
}

bool EPSet::is_cofinite() const {
  return !period_.empty() && std::all_of(period_.begin(), period_.end(), [](bool b) { return b; });
}

EPSet EPSet::complement() const {
  std::vector<bool> prefix(prefix_.size()), period;
  for (std::size_t i = 0; i < prefix_.size(); ++i) prefix[i] = !prefix_[i];
  if (period_.empty()) {
    period = {true};
  } else {
    period.resize(period_.size());
    for (std::size_t k = 0; k < period_.size(); ++k) period[k] = !period_[k];
  }
  return EPSet(std::move(prefix), std::move(period));
}

EPSet EPSet::finitely_change(std::span<const Index> add, std::span<const Index> remove) const {
  Index top = prefix_.size();
  for (Index n : add) {
    if (n == 0) throw std::invalid_argument("EPSet: indices start at 1");
    if (std::find(remove.begin(), remove.end(), n) != remove.end())
      throw std::invalid_argument("EPSet: index " + std::to_string(n) + " is both added and removed");
    top = std::max(top, n);
  }
  for (Index n : remove) {
    if (n == 0) throw std::invalid_argument("EPSet: indices start at 1");
    top = std::max(top, n);
  }
  auto member = [&](Index n) {
    if (std::find(add.begin(), add.end(), n) != add.end()) return true;
    if (std::find(remove.begin(), remove.end(), n) != remove.end()) return false;
    return contains(n);
  };
  return relayout(top, period_.size(), member);
}

EPSet EPSet::unite(const EPSet& other) const {
  const std::size_t p = std::max(prefix_.size(), other.prefix_.size());
  const std::size_t q = std::lcm(std::max<std::size_t>(period_.size(), 1), std::max<std::size_t>(other.period_.size(), 1));
  return relayout(p, q, [&](Index n) { return contains(n) || other.contains(n); });
}

EPSet EPSet::intersect(const EPSet& other) const {
  const std::size_t p = std::max(prefix_.size(), other.prefix_.size());
  const std::size_t q = std::lcm(std::max<std::size_t>(period_.size(), 1), std::max<std::size_t>(other.period_.size(), 1));
  return relayout(p, q, [&](Index n) { return contains(n) && other.contains(n); });
}

bool EPSet::is_subset_of(const EPSet& other) const { return intersect(other) == *this; }

ExtNat EPSet::gap() const {
  if (is_finite()) return ExtNat::infinity();
  // Every gap inside the periodic tail recurs forever; gaps touching the
  // prefix occur once. Scan one period cyclically.
  const std::size_t q = period_.size();
  std::vector<std::size_t> ones;
  for (std::size_t k = 0; k < q; ++k)
    if (period_[k]) ones.push_back(k);
  std::size_t widest = q - ones.back() + ones.front() - 1;
  for (std::size_t t = 0; t + 1 < ones.size(); ++t) widest = std::max(widest, ones[t + 1] - ones[t] - 1);
  return ExtNat(widest);
}

ExtNat EPSet::cogap() const { return complement().gap(); }

std::ostream& operator<<(std::ostream& os, const EPSet& s) { return os << s.to_string(); }

}  // namespace evfam
