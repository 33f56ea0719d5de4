#include "evfam/sampling.hpp"

#include <algorithm>

namespace evfam {

EPSet random_epset(std::mt19937_64& rng, std::size_t max_prefix, std::size_t max_period) {
  std::uniform_int_distribution<std::size_t> plen(0, max_prefix);
  std::uniform_int_distribution<std::size_t> qlen(0, max_period);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double density = unit(rng);
  auto draw = [&](std::size_t n) {
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = unit(rng) < density;
    return bits;
  };
  auto prefix = draw(plen(rng));
  auto period = draw(qlen(rng));
  return EPSet(std::move(prefix), std::move(period));
}

std::vector<Index> random_indices(std::mt19937_64& rng, std::size_t max_count, Index max_index) {
  std::uniform_int_distribution<std::size_t> count(0, max_count);
  std::uniform_int_distribution<Index> pick(1, std::max<Index>(max_index, 1));
  std::vector<Index> out;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    const Index n = pick(rng);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

Subset random_subset(std::mt19937_64& rng, const FiniteGround& ground) {
  std::uniform_int_distribution<std::uint32_t> pick(0, ground.full().bits);
  return {pick(rng)};
}

}  // namespace evfam
