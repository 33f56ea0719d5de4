#include <gtest/gtest.h>

#include <random>

#include "evfam/multisets.hpp"
#include "evfam/sampling.hpp"

using namespace evfam;

namespace {

const EPSet kEvens = EPSet::residue_class(2, 0);
const EPSet kOdds = EPSet::residue_class(2, 1);
const ExtNat kInf = ExtNat::infinity();

FiniteGround ab() { return FiniteGround({"a", "b"}); }

}  // namespace

TEST(Multisets, Values) {
  EXPECT_EQ(mf_value(Multifamily::cogap(), EPSet::finite({4})), ExtNat(0));
  EXPECT_EQ(mf_value(Multifamily::gap(), EPSet::finite({4})), kInf);
  EXPECT_EQ(mf_value(Multifamily::indicator(Family::infinite()), kOdds), ExtNat(1));
  EXPECT_EQ(mf_value(Multifamily::indicator(Family::cofinite()), kOdds), ExtNat(0));
}

TEST(Multisets, Complement) {
  const auto gc = mf_complement(Multifamily::gap());
  EXPECT_EQ(mf_value(gc, kOdds), ExtNat(1));
  EXPECT_EQ(mf_value(gc, EPSet::finite({1, 2}).complement()), kInf);
  std::mt19937_64 rng(1);
  const auto twice = mf_complement(mf_complement(Multifamily::cogap()));
  for (int k = 0; k < 50; ++k) {
    const EPSet s = random_epset(rng);
    ASSERT_EQ(mf_value(twice, s), mf_value(Multifamily::cogap(), s));
    ASSERT_EQ(mf_value(Multifamily::cogap(), s), mf_value(gc, s));
  }
  EXPECT_EQ(Multifamily::gap().monotonicity(), Direction::Decreasing);
  EXPECT_EQ(gc.monotonicity(), Direction::Increasing);
}

TEST(Multisets, LevelFamilies) {
  const auto l1 = level_family(Multifamily::cogap(), 1);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 500; ++k) {
    const EPSet s = random_epset(rng);
    ASSERT_EQ(l1.contains(s), !s.is_finite()) << s;
  }
  EXPECT_TRUE(level_family(Multifamily::cogap(), kInf).contains(EPSet::finite({3}).complement()));
  EXPECT_FALSE(level_family(Multifamily::cogap(), kInf).contains(kEvens));
  EXPECT_THROW(level_family(Multifamily::cogap(), 0), std::invalid_argument);
  EXPECT_TRUE(classify(level_family(Multifamily::cogap(), 3)).eventual.holds);

  const auto x = ab();
  const auto f = Family::indicator(x, {x.subset({"a"})});
  const auto lf = level_family(Multifamily::indicator(f), 1);
  for (std::uint32_t b = 0; b < 4; ++b) EXPECT_EQ(lf.contains(Subset{b}), f.contains(Subset{b}));
}

TEST(Multisets, Classify) {
  const auto c = mf_classify(Multifamily::cogap());
  EXPECT_TRUE(c.increasing.holds);
  EXPECT_FALSE(c.decreasing.holds);
  EXPECT_TRUE(c.finitely_insensitive.holds);
  const auto g = mf_classify(Multifamily::gap());
  EXPECT_TRUE(g.decreasing.holds);
  EXPECT_FALSE(g.increasing.holds);

  const auto x = ab();
  const auto t = Multifamily::explicit_table(x, {{x.subset({"a"}), 2}, {x.full(), 1}});
  const auto r = mf_classify(t);
  EXPECT_FALSE(r.increasing.holds);
  EXPECT_FALSE(r.increasing.witness.empty());
}

TEST(Multisets, Star) {
  const auto x = ab();
  const auto all = mstar(Multifamily::indicator(Family::all(x)));
  EXPECT_EQ(all.mult, (std::vector<ExtNat>{1, 1}));
  const auto t = mstar(Multifamily::explicit_table(x, {{x.subset({"a"}), 3}}));
  EXPECT_EQ(t.at("a"), ExtNat(3));
  EXPECT_EQ(t.at("b"), ExtNat(0));
  EXPECT_EQ(t.support(), x.subset({"a"}));
}

TEST(Multisets, Push) {
  const auto x = ab();
  const SequenceMap constant{x, {}, {0}};
  EXPECT_EQ(mf_value(mpush(constant, Multifamily::cogap()), x.subset({"a"})), kInf);
  const SequenceMap alternating{x, {}, {0, 1}};
  EXPECT_EQ(mf_value(mpush(alternating, Multifamily::cogap()), x.subset({"a"})), ExtNat(1));
  EXPECT_EQ(mpush(alternating, Multifamily::cogap()).monotonicity(), Direction::Increasing);
  const FiniteMap id{x, x, {0, 1}};
  const auto t = Multifamily::explicit_table(x, {{x.subset({"a"}), 2}, {x.full(), 5}});
  for (std::uint32_t b = 0; b < 4; ++b) EXPECT_EQ(mf_value(mpush(id, t), Subset{b}), mf_value(t, Subset{b}));
}

TEST(Multisets, Limits) {
  const auto x = ab();
  const auto t = Multifamily::explicit_table(x, {{x.subset({"a"}), 2}, {x.subset({"b"}), 1}, {x.full(), 4}});
  const auto disc = FiniteTopology::discrete(x);
  EXPECT_EQ(multiset_limit(t, disc), mstar(t));
  const auto ind = multiset_limit(t, FiniteTopology::indiscrete(x));
  EXPECT_EQ(ind.mult, (std::vector<ExtNat>{4, 4}));
  EXPECT_EQ(multiset_limit(Multifamily::indicator(Family::all(x)), disc).mult,
            (std::vector<ExtNat>{1, 1}));
  const auto down = Multifamily::explicit_table(x, {{Subset{0}, 3}, {x.subset({"a"}), 1}});
  EXPECT_THROW(multiset_limit(down, disc), std::invalid_argument);
}

TEST(MultisetsProperty, IndicatorBridge) {
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto x = FiniteGround::of_size(n);
    for (std::uint64_t mask = 0; mask < (1ULL << x.subset_count()); ++mask) {
      std::vector<Subset> sets;
      for (std::uint32_t s = 0; s < x.subset_count(); ++s)
        if ((mask >> s) & 1U) sets.push_back({s});
      const auto f = Family::indicator(x, sets);
      const auto fr = classify(f);
      const auto mr = mf_classify(Multifamily::indicator(f));
      ASSERT_EQ(fr.eventual.holds, mr.increasing.holds);
      ASSERT_EQ(fr.co_eventual.holds, mr.decreasing.holds);
    }
  }
}

TEST(MultisetsProperty, LimitIsStarOfClosure) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto x = FiniteGround::of_size(n);
    for (int k = 0; k < 20; ++k) {
      // max of random values over subsets below: an increasing table.
      std::vector<ExtNat> base(x.subset_count());
      for (auto& v : base) v = (rng() % 5 == 0) ? kInf : ExtNat(rng() % 4);
      std::vector<std::pair<Subset, ExtNat>> table;
      for (std::uint32_t s = 0; s < x.subset_count(); ++s) {
        ExtNat v = 0;
        for (std::uint32_t r = 0; r < x.subset_count(); ++r)
          if ((r & ~s) == 0) v = std::max(v, base[r]);
        table.push_back({{s}, v});
      }
      const auto m = Multifamily::explicit_table(x, table);
      ASSERT_NE(m.monotonicity(), Direction::Decreasing);
      for (const auto& t : all_topologies(x)) ASSERT_EQ(multiset_limit(m, t), mstar(mf_closure(m, t)));
    }
  }
}

TEST(MultisetsProperty, GapAttained) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 500; ++k) {
    const EPSet s = random_epset(rng);
    const ExtNat g = s.gap();
    if (g.is_infinite()) continue;
    // Two periods past the prefix realize every recurring gap.
    const Index lo = s.prefix().size() + 1, hi = lo + 3 * s.period().size();
    std::uint64_t best = 0, run = 0;
    bool seen = false;
    for (Index n = lo; n <= hi; ++n) {
      if (s.contains(n)) {
        if (seen) best = std::max(best, run);
        seen = true;
        run = 0;
      } else {
        ++run;
      }
    }
    ASSERT_EQ(ExtNat(best), g) << s;
  }
}
