#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "evfam/epset.hpp"
#include "evfam/sampling.hpp"
#include "oracles.hpp"

using evfam::EPSet;
using evfam::ExtNat;

namespace {

const EPSet kEvens = EPSet::residue_class(2, 0);
const EPSet kOdds = EPSet::residue_class(2, 1);

}  // namespace

TEST(ExtNat, OrderAndText) {
  EXPECT_LT(ExtNat(5), ExtNat::infinity());
  EXPECT_LT(ExtNat(0), ExtNat(1));
  EXPECT_EQ(std::max(ExtNat(3), ExtNat::infinity()), ExtNat::infinity());
  EXPECT_EQ(std::min(ExtNat(3), ExtNat::infinity()), ExtNat(3));
  EXPECT_EQ(ExtNat::parse("inf"), ExtNat::infinity());
  EXPECT_EQ(ExtNat::parse("17").value(), 17u);
  EXPECT_EQ(ExtNat::infinity().to_string(), "inf");
  EXPECT_THROW(ExtNat::infinity().value(), std::domain_error);
  EXPECT_THROW(ExtNat::parse("-1"), std::invalid_argument);
  EXPECT_THROW(ExtNat::parse(""), std::invalid_argument);
}

TEST(EPSet, Membership) {
  EXPECT_TRUE(kEvens.contains(4));
  EXPECT_FALSE(kEvens.contains(3));
  const EPSet f = EPSet::finite({1, 5, 9});
  EXPECT_FALSE(f.contains(7));
  EXPECT_TRUE(f.contains(9));
  EXPECT_FALSE(f.contains(1000));
  const EPSet cof = EPSet::naturals().finitely_change({}, std::vector<evfam::Index>{3});
  EXPECT_FALSE(cof.contains(3));
  EXPECT_TRUE(cof.contains(4));
  EXPECT_TRUE(cof.is_cofinite());
}

TEST(EPSet, Canonicalization) {
  // The period 1010 collapses to 10 and the redundant prefix disappears.
  const EPSet a({true, false}, {true, false, true, false});
  EXPECT_EQ(a, kOdds);
  EXPECT_EQ(a.period().size(), 2u);
  EXPECT_TRUE(a.prefix().empty());
  EXPECT_EQ(EPSet({false, false}, {false, false}), EPSet::empty());
  EXPECT_TRUE(EPSet({true}, {}).is_finite());
}

TEST(EPSet, TextForm) {
  EXPECT_EQ(EPSet::parse("prefix=101;period="), EPSet::finite({1, 3}));
  EXPECT_EQ(EPSet::parse("prefix=;period=01"), kEvens);
  for (const EPSet& s : {kEvens, EPSet::finite({2, 7}), EPSet::naturals(), EPSet::empty()})
    EXPECT_EQ(EPSet::parse(s.to_string()), s);
  EXPECT_THROW(EPSet::parse("prefix=12;period=0"), std::invalid_argument);
  EXPECT_THROW(EPSet::parse("garbage"), std::invalid_argument);
}

TEST(EPSet, Complement) {
  EXPECT_EQ(kEvens.complement(), kOdds);
  EXPECT_EQ(EPSet::empty().complement(), EPSet::naturals());
  const EPSet c = EPSet::finite({1, 5, 9}).complement();
  EXPECT_TRUE(c.is_cofinite());
  for (evfam::Index n = 1; n <= 20; ++n) EXPECT_EQ(c.contains(n), n != 1 && n != 5 && n != 9);
}

TEST(EPSet, FinitelyChange) {
  const std::vector<evfam::Index> one{1}, two{2}, three{3}, none;
  const EPSet s = kEvens.finitely_change(one, two);
  EXPECT_TRUE(s.contains(1));
  EXPECT_FALSE(s.contains(2));
  EXPECT_TRUE(s.contains(4));
  EXPECT_EQ(EPSet::empty().finitely_change(three, none), EPSet::finite({3}));
  EXPECT_EQ(kEvens.finitely_change(none, none), kEvens);
  EXPECT_THROW(kEvens.finitely_change(two, two), std::invalid_argument);
}

TEST(EPSet, GapAndCogap) {
  EXPECT_EQ(EPSet::finite({1, 5, 9}).gap(), ExtNat::infinity());
  EXPECT_EQ(EPSet::empty().gap(), ExtNat::infinity());
  EXPECT_EQ(kEvens.gap(), ExtNat(1));
  EXPECT_EQ(EPSet::naturals().gap(), ExtNat(0));
  EXPECT_EQ(EPSet::finite({2, 3}).cogap(), ExtNat(0));
  EXPECT_EQ(EPSet::finite({2, 3}).complement().cogap(), ExtNat::infinity());
  EXPECT_EQ(kOdds.cogap(), ExtNat(1));
  // Runs of three members every five indices.
  EXPECT_EQ(EPSet::parse("prefix=;period=11100").cogap(), ExtNat(3));
  EXPECT_EQ(EPSet::parse("prefix=;period=11100").gap(), ExtNat(2));
  // A long initial gap does not recur.
  EXPECT_EQ(EPSet::parse("prefix=1000000001;period=1").gap(), ExtNat(0));
}

TEST(EPSet, UnionIntersection) {
  EXPECT_EQ(kEvens.unite(kOdds), EPSet::naturals());
  EXPECT_EQ(kEvens.intersect(kOdds), EPSet::empty());
  const EPSet m3 = EPSet::residue_class(3, 0);
  EXPECT_EQ(kEvens.intersect(m3), EPSet::residue_class(6, 0));
  EXPECT_TRUE(EPSet::residue_class(6, 0).is_subset_of(m3));
  EXPECT_FALSE(m3.is_subset_of(kEvens));
}

TEST(EPSetProperty, OracleEquivalence) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    const auto raw = evfam::oracle::random_raw(rng, 8, 12);
    const EPSet s(raw.prefix, raw.period);
    const evfam::Index h = raw.prefix.size() + 3 * raw.period.size() + 3;
    for (evfam::Index n = 1; n <= h; ++n) ASSERT_EQ(s.contains(n), raw.member(n));
    ASSERT_EQ(s.gap(), evfam::oracle::gap_oracle(raw, h)) << s;
    ASSERT_EQ(s.cogap(), evfam::oracle::cogap_oracle(raw, h)) << s;
    // Re-encoding must land on the same canonical form.
    const auto other = evfam::oracle::reencode(raw);
    ASSERT_EQ(EPSet(other.prefix, other.period), s);
    ASSERT_EQ(s.complement().complement(), s);
    ASSERT_EQ(s.cogap(), s.complement().gap());
  }
}

TEST(EPSetProperty, MonotoneAndFinitelyInsensitive) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const EPSet s = evfam::random_epset(rng);
    const EPSet bigger = s.unite(evfam::random_epset(rng));
    ASSERT_TRUE(s.is_subset_of(bigger));
    ASSERT_GE(s.gap(), bigger.gap());
    ASSERT_LE(s.cogap(), bigger.cogap());
    if (s.is_finite()) continue;
    auto add = evfam::random_indices(rng, 4, 30);
    std::vector<evfam::Index> remove;
    for (auto n : evfam::random_indices(rng, 4, 30))
      if (std::find(add.begin(), add.end(), n) == add.end()) remove.push_back(n);
    ASSERT_EQ(s.finitely_change(add, remove).gap(), s.gap());
  }
}
