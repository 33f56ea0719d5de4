#include "evfam/topology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace evfam {

namespace {

std::vector<Subset> close_under_lattice_ops(std::set<std::uint32_t> opens) {
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint32_t> snapshot(opens.begin(), opens.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      for (std::size_t j = i + 1; j < snapshot.size(); ++j) {
        grew |= opens.insert(snapshot[i] | snapshot[j]).second;
        grew |= opens.insert(snapshot[i] & snapshot[j]).second;
      }
    }
  }
  std::vector<Subset> out;
  for (auto b : opens) out.push_back({b});
  return out;
}

bool is_lattice_closed(const std::vector<std::uint32_t>& sorted_opens) {
  auto has = [&](std::uint32_t b) { return std::binary_search(sorted_opens.begin(), sorted_opens.end(), b); };
  for (std::size_t i = 0; i < sorted_opens.size(); ++i)
    for (std::size_t j = i + 1; j < sorted_opens.size(); ++j)
      if (!has(sorted_opens[i] | sorted_opens[j]) || !has(sorted_opens[i] & sorted_opens[j])) return false;
  return true;
}

}  // namespace

FiniteTopology::FiniteTopology(FiniteGround ground, std::vector<Subset> opens)
    : ground_(std::move(ground)), opens_(std::move(opens)) {
  std::sort(opens_.begin(), opens_.end());
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  for (auto u : opens_)
    if (!u.is_subset_of(ground_.full())) throw std::invalid_argument("FiniteTopology: open set outside the ground");
  if (!is_open(Subset{}) || !is_open(ground_.full()))
    throw std::invalid_argument("FiniteTopology: opens must contain the empty set and the ground");
  std::vector<std::uint32_t> bits;
  for (auto u : opens_) bits.push_back(u.bits);
  if (!is_lattice_closed(bits))
    throw std::invalid_argument("FiniteTopology: opens are not closed under union and intersection");
}

FiniteTopology FiniteTopology::discrete(const FiniteGround& ground) {
  std::vector<Subset> opens;
  for (std::uint32_t b = 0; b < ground.subset_count(); ++b) opens.push_back({b});
  return FiniteTopology(ground, std::move(opens));
}

FiniteTopology FiniteTopology::indiscrete(const FiniteGround& ground) {
  return FiniteTopology(ground, {Subset{}, ground.full()});
}

FiniteTopology FiniteTopology::generated_by(const FiniteGround& ground, const std::vector<Subset>& subbase) {
  std::set<std::uint32_t> opens{0U, ground.full().bits};
  for (auto s : subbase) opens.insert(s.bits & ground.full().bits);
  return FiniteTopology(ground, close_under_lattice_ops(std::move(opens)));
}

bool FiniteTopology::is_open(Subset s) const { return std::binary_search(opens_.begin(), opens_.end(), s); }

bool FiniteTopology::is_hausdorff() const {
  const std::size_t n = ground_.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      bool separated = false;
      for (auto u : opens_) {
        if (!u.contains(x) || u.contains(y)) continue;
        for (auto v : opens_) {
          if (v.contains(y) && (u & v).empty()) {
            separated = true;
            break;
          }
        }
        if (separated) break;
      }
      if (!separated) return false;
    }
  }
  return true;
}

std::vector<FiniteTopology> all_topologies(const FiniteGround& ground) {
  if (ground.size() > 4) throw std::invalid_argument("all_topologies: ground too large for exhaustive enumeration");
  const std::uint32_t full = ground.full().bits;
  // Candidate opens besides the empty set and the ground.
  std::vector<std::uint32_t> middle;
  for (std::uint32_t b = 1; b < ground.subset_count(); ++b)
    if (b != full) middle.push_back(b);
  std::vector<FiniteTopology> out;
  const std::uint64_t combos = std::uint64_t{1} << middle.size();
  std::vector<std::uint32_t> opens;
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    opens.assign({0U});
    for (std::size_t k = 0; k < middle.size(); ++k)
      if ((mask >> k) & 1U) opens.push_back(middle[k]);
    if (full != 0) opens.push_back(full);
    std::sort(opens.begin(), opens.end());
    if (!is_lattice_closed(opens)) continue;
    std::vector<Subset> subs;
    for (auto b : opens) subs.push_back({b});
    out.emplace_back(ground, std::move(subs));
  }
  return out;
}

FiniteTopology random_topology(const FiniteGround& ground, std::size_t subbase_size, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, ground.full().bits);
  std::vector<Subset> subbase;
  for (std::size_t k = 0; k < subbase_size; ++k) subbase.push_back({pick(rng)});
  return FiniteTopology::generated_by(ground, subbase);
}

}  // namespace evfam
