#pragma once

#include <random>
#include <vector>

#include "evfam/epset.hpp"
#include "evfam/ground.hpp"

namespace evfam {

/// Random EPSet built from a prefix of length <= max_prefix and a period of
/// length <= max_period (before canonicalization). Bit density is drawn per
/// set so sparse, dense, finite and cofinite sets all show up.
EPSet random_epset(std::mt19937_64& rng, std::size_t max_prefix = 8, std::size_t max_period = 12);

/// Up to `max_count` distinct indices in 1..max_index.
std::vector<Index> random_indices(std::mt19937_64& rng, std::size_t max_count, Index max_index);

/// Random subset of a finite ground.
Subset random_subset(std::mt19937_64& rng, const FiniteGround& ground);

}  // namespace evfam
