#include <gtest/gtest.h>

#include <random>

#include "evfam/families.hpp"
#include "evfam/sampling.hpp"
#include "oracles.hpp"

using namespace evfam;

namespace {

const EPSet kEvens = EPSet::residue_class(2, 0);
const EPSet kOdds = EPSet::residue_class(2, 1);

FiniteGround ab() { return FiniteGround({"a", "b"}); }

}  // namespace

TEST(Families, SymbolicMembership) {
  EXPECT_FALSE(Family::cofinite().contains(kEvens));
  EXPECT_TRUE(Family::infinite().contains(kEvens));
  const EPSet cof = EPSet::finite({2, 4}).complement();
  EXPECT_TRUE(Family::cogap_level(3).contains(cof));
  EXPECT_FALSE(Family::cogap_level(2).contains(kOdds));
  EXPECT_TRUE(Family::cogap_level(1).contains(kOdds));
  EXPECT_THROW(Family::cofinite().contains(Subset{1}), std::invalid_argument);
  EXPECT_THROW(Family::cogap_level(0), std::invalid_argument);
}

TEST(Families, ClassifySymbolic) {
  const auto g = classify(Family::infinite());
  EXPECT_TRUE(g.eventual.holds);
  EXPECT_FALSE(g.filter.holds);
  EXPECT_FALSE(g.filter.witness.empty());
  EXPECT_EQ(g.filter.evidence, Evidence::Exact);
  EXPECT_TRUE(g.finitely_insensitive.holds);

  const auto h = classify(Family::cofinite());
  EXPECT_TRUE(h.eventual.holds && h.filter.holds && h.finitely_insensitive.holds);
  EXPECT_FALSE(h.co_eventual.holds);

  const auto c = classify(Family::cogap_level(4));
  EXPECT_TRUE(c.eventual.holds && c.finitely_insensitive.holds);

  const auto all = classify(Family::all());
  EXPECT_TRUE(all.eventual.holds && all.co_eventual.holds);
  const auto none = classify(Family::empty());
  EXPECT_TRUE(none.eventual.holds && none.co_eventual.holds);
}

TEST(Families, ClassifyIndicator) {
  const auto x = ab();
  const auto f = Family::indicator(x, {x.subset({"a"}), x.subset({"a", "b"})});
  const auto r = classify(f);
  EXPECT_TRUE(r.eventual.holds);
  EXPECT_FALSE(r.co_eventual.holds);
  EXPECT_EQ(r.eventual.evidence, Evidence::Exact);
  // {{a}, {b}} is not upward closed.
  const auto g = Family::indicator(x, {x.subset({"a"}), x.subset({"b"})});
  EXPECT_FALSE(classify(g).eventual.holds);
}

TEST(Families, ClassifyPredicateIsSampled) {
  const auto x = ab();
  const auto f = Family::predicate(x, [](const SetRep& s) { return std::get<Subset>(s).bits != 0; },
                                   Direction::Increasing);
  const auto r = classify(f, 200, 3);
  EXPECT_TRUE(r.eventual.holds);
  EXPECT_EQ(r.eventual.evidence, Evidence::Sampled);
  EXPECT_EQ(f.declared_direction(), Direction::Increasing);
}

TEST(Families, ComplementDuality) {
  const FiniteGround a({"a"});
  EXPECT_TRUE(complement_duality_check(Family::indicator(a, {Subset{0}})));
  const auto x = ab();
  EXPECT_TRUE(complement_duality_check(Family::indicator(x, {Subset{0}, x.subset({"a"}), x.subset({"b"})})));
  EXPECT_TRUE(complement_duality_check(Family::indicator(x, {x.subset({"a"})})));
  const auto comp = complement_family(Family::indicator(x, {x.subset({"a"})}));
  EXPECT_EQ(comp.sets().size(), 3u);
}

TEST(Families, Star) {
  const FiniteGround abc({"a", "b", "c"});
  EXPECT_EQ(std::get<Subset>(star(Family::all(abc))), abc.full());
  EXPECT_EQ(std::get<EPSet>(star(Family::cofinite())), EPSet::empty());
  const auto x = ab();
  EXPECT_EQ(std::get<Subset>(star(Family::indicator(x, {x.subset({"a"}), x.subset({"a", "b"})}))), x.subset({"a"}));
}

TEST(Families, Push) {
  const FiniteGround dom({"1", "2"}), cod({"a"});
  const FiniteMap f{dom, cod, {0, 0}};
  const auto pushed = push(f, Family::indicator(dom, {dom.full()}));
  EXPECT_TRUE(pushed.contains(cod.subset({"a"})));
  EXPECT_FALSE(pushed.contains(Subset{0}));

  const auto x = ab();
  const SequenceMap constant{x, {}, {0}};
  const auto ph = push(constant, Family::cofinite());
  EXPECT_TRUE(ph.contains(x.subset({"a"})));
  EXPECT_TRUE(ph.contains(x.full()));
  EXPECT_FALSE(ph.contains(x.subset({"b"})));

  // Identity push keeps membership.
  const FiniteMap id{x, x, {0, 1}};
  const auto f0 = Family::indicator(x, {x.subset({"a"}), x.full()});
  const auto pid = push(id, f0);
  for (std::uint32_t b = 0; b < x.subset_count(); ++b) EXPECT_EQ(pid.contains(Subset{b}), f0.contains(Subset{b}));

  const SequenceMap bad{x, {}, {}};
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(Families, LimitSetAndClosure) {
  const auto x = ab();
  const auto disc = FiniteTopology::discrete(x);
  EXPECT_EQ(limit_set(Family::all(x), disc), x.full());
  EXPECT_EQ(limit_set(Family::empty(x), disc), Subset{0});
  const auto has_a = Family::indicator(x, {x.subset({"a"}), x.full()});
  EXPECT_EQ(limit_set(has_a, disc), x.subset({"a"}));
  EXPECT_EQ(closure_family(has_a, disc).sets(), has_a.sets());
  EXPECT_EQ(closure_family(Family::all(x), disc).sets().size(), 4u);

  // cl{X} on the indiscrete topology is every nonempty subset.
  const auto ind = FiniteTopology::indiscrete(x);
  const auto cl = closure_family(Family::indicator(x, {x.full()}), ind);
  EXPECT_EQ(cl.sets().size(), 3u);
  EXPECT_FALSE(cl.contains(Subset{0}));
}

TEST(Topology, Validation) {
  const auto x = ab();
  EXPECT_NO_THROW(FiniteTopology(x, {Subset{0}, x.subset({"a"}), x.subset({"b"}), x.full()}));
  EXPECT_THROW(FiniteTopology(x, {x.subset({"a"}), x.full()}), std::invalid_argument);
  EXPECT_THROW(FiniteTopology(x, {Subset{0}, x.subset({"a"})}), std::invalid_argument);
  const auto three = FiniteGround::of_size(3);
  // {x1} and {x2} without their union.
  EXPECT_THROW(FiniteTopology(three, {Subset{0}, Subset{1}, Subset{2}, three.full()}), std::invalid_argument);
}

TEST(Topology, Enumeration) {
  // Known counts of topologies on 0..4 points.
  const std::size_t counts[] = {1, 1, 4, 29, 355};
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_EQ(all_topologies(FiniteGround::of_size(n)).size(), counts[n]);
  EXPECT_TRUE(FiniteTopology::discrete(ab()).is_hausdorff());
  EXPECT_FALSE(FiniteTopology::indiscrete(ab()).is_hausdorff());
}

TEST(FamiliesProperty, OnlyTwoTrivialFamilies) {
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto x = FiniteGround::of_size(n);
    const std::size_t subsets = x.subset_count();
    std::size_t both = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << subsets); ++mask) {
      std::vector<Subset> sets;
      for (std::uint32_t s = 0; s < subsets; ++s)
        if ((mask >> s) & 1U) sets.push_back({s});
      const auto r = classify(Family::indicator(x, sets));
      both += r.eventual.holds && r.co_eventual.holds;
    }
    EXPECT_EQ(both, 2u) << "|X| = " << n;
  }
}

TEST(FamiliesProperty, StarClosureIsLimitSet) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto x = FiniteGround::of_size(n);
    const auto tops = all_topologies(x);
    for (int k = 0; k < 40; ++k) {
      std::vector<Subset> sets;
      for (std::uint32_t s = 0; s < x.subset_count(); ++s)
        if (rng() & 1U) sets.push_back({s});
      const auto f = Family::indicator(x, sets);
      evfam::oracle::FamilyBits bits(x.subset_count(), false);
      for (auto s : sets) bits[s.bits] = true;
      for (const auto& t : tops) {
        const Subset lim = limit_set(f, t);
        ASSERT_EQ(std::get<Subset>(star(closure_family(f, t))), lim);
        ASSERT_EQ(lim, evfam::oracle::limit_set(bits, t));
        ASSERT_TRUE(evfam::oracle::closed(lim, t));
      }
    }
  }
}

TEST(FamiliesProperty, PushPreservesEventual) {
  std::mt19937_64 rng(9);
  const auto x = FiniteGround::of_size(3), y = FiniteGround::of_size(2);
  for (int k = 0; k < 100; ++k) {
    // Up-closure of a random generator set is eventual.
    const Subset gen = random_subset(rng, x);
    std::vector<Subset> sets;
    for (std::uint32_t s = 0; s < x.subset_count(); ++s)
      if (gen.is_subset_of({s})) sets.push_back({s});
    FiniteMap f{x, y, {}};
    for (std::size_t i = 0; i < x.size(); ++i) f.image.push_back(rng() % y.size());
    const auto pushed = push(f, Family::indicator(x, sets));
    ASSERT_TRUE(classify(pushed).eventual.holds);
  }
}

TEST(FamiliesProperty, SandwichBetweenHAndG) {
  std::mt19937_64 rng(13);
  const std::vector<Family> fams = {Family::cogap_level(1), Family::cogap_level(2), Family::cogap_level(5),
                                    Family::cogap_level(ExtNat::infinity())};
  for (int k = 0; k < 1000; ++k) {
    const EPSet s = random_epset(rng);
    for (const auto& f : fams) {
      if (Family::cofinite().contains(s)) ASSERT_TRUE(f.contains(s)) << s;
      if (f.contains(s)) ASSERT_TRUE(Family::infinite().contains(s)) << s;
    }
  }
}
