#pragma once

// Brute-force reference implementations. Deliberately naive: they read raw
// bit patterns or enumerate definitions directly and share no logic with the
// library code they are compared against.

#include <functional>
#include <optional>
#include <vector>

#include "evfam/extnat.hpp"
#include "evfam/ground.hpp"
#include "evfam/setlimits.hpp"
#include "evfam/topology.hpp"

namespace evfam::oracle {

/// An uncanonicalized (prefix, period) pair, 1-based: n <= p reads prefix[n-1].
struct RawBits {
  std::vector<bool> prefix;
  std::vector<bool> period;

  bool member(Index n) const;
};

/// Largest gap between consecutive members of {n in [lo, hi] : member(n)};
/// infinity when fewer than two members occur there.
ExtNat gap_scan(const std::function<bool(Index)>& member, Index lo, Index hi);

/// Tail scan over (p, horizon]. For a periodic tail with horizon >= p + 2q
/// every recurring gap is seen at least once.
ExtNat gap_oracle(const RawBits& s, Index horizon);
ExtNat cogap_oracle(const RawBits& s, Index horizon);

/// Families on a finite ground given as membership bits over subsets.
using FamilyBits = std::vector<bool>;

bool eventual(const FamilyBits& f, std::size_t ground_size);
bool co_eventual(const FamilyBits& f, std::size_t ground_size);
bool filter(const FamilyBits& f, std::size_t ground_size);

/// x such that every open set containing x lies in F.
Subset limit_set(const FamilyBits& f, const FiniteTopology& t);
/// Is `s` closed: its complement is a union of open sets.
bool closed(Subset s, const FiniteTopology& t);

/// limsup / liminf by scanning (H, 2H] where H bounds every trace horizon.
Subset limsup(const SetSequence& seq);
Subset liminf(const SetSequence& seq);
/// {x : cogap(trace(x)) >= c} by scanning runs of consecutive members.
Subset cogap_level_limit(const SetSequence& seq, ExtNat c);

/// Smallest c >= 1 such that every c consecutive flags hold a true entry,
/// found by trying c = 1, 2, ... An empty sequence gives 1.
std::optional<std::size_t> min_window(const std::vector<bool>& witness);

}  // namespace evfam::oracle

#include <random>

namespace evfam::oracle {

/// Random raw pair with p <= max_p, q <= max_q and a random bit density.
RawBits random_raw(std::mt19937_64& rng, std::size_t max_p, std::size_t max_q);

/// The same set encoded differently: one period unrolled into the prefix
/// and the period doubled.
RawBits reencode(const RawBits& s);

}  // namespace evfam::oracle
