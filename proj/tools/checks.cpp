#include "checks.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "evfam/analysis.hpp"
#include "evfam/instances.hpp"
#include "evfam/multisets.hpp"
#include "evfam/sampling.hpp"
#include "evfam/setlimits.hpp"
#include "oracles.hpp"

namespace evfam::checks {

namespace {

constexpr std::size_t kMaxWitnesses = 5;

class Recorder {
 public:
  explicit Recorder(std::string name) { r_.name = std::move(name); }

  template <typename Describe>
  void check(bool ok, Describe&& describe) {
    ++r_.cases;
    if (ok) return;
    ++r_.failures;
    if (r_.witnesses.size() < kMaxWitnesses) r_.witnesses.push_back(describe());
  }

  SuiteResult done() {
    // Shorter descriptions first: they are usually the smaller instances.
    std::stable_sort(r_.witnesses.begin(), r_.witnesses.end(),
                     [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
    return std::move(r_);
  }

 private:
  SuiteResult r_;
};

std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

std::string raw_text(const oracle::RawBits& r) { return "prefix=" + bits(r.prefix) + ";period=" + bits(r.period); }

Family family_of(const FiniteGround& g, const oracle::FamilyBits& f) {
  std::vector<Subset> sets;
  for (std::uint32_t b = 0; b < f.size(); ++b)
    if (f[b]) sets.push_back({b});
  return Family::indicator(g, std::move(sets));
}

oracle::FamilyBits bits_of(const Family& f) {
  const auto& g = finite_ground(f.ground());
  oracle::FamilyBits out(g.subset_count());
  for (std::uint32_t b = 0; b < g.subset_count(); ++b) out[b] = f.contains(Subset{b});
  return out;
}

oracle::FamilyBits random_family(std::mt19937_64& rng, std::size_t n) {
  oracle::FamilyBits f(1U << n);
  std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = coin(rng);
  return f;
}

// Up-closure of a few random generators.
oracle::FamilyBits random_eventual(std::mt19937_64& rng, std::size_t n) {
  const std::uint32_t count = 1U << n;
  std::uniform_int_distribution<std::uint32_t> pick(0, count - 1);
  const std::size_t gens = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  oracle::FamilyBits f(count, false);
  for (std::size_t k = 0; k < gens; ++k) {
    const std::uint32_t gen = pick(rng);
    for (std::uint32_t b = 0; b < count; ++b)
      if ((gen & b) == gen) f[b] = true;
  }
  return f;
}

std::vector<FiniteTopology> topology_corpus(std::mt19937_64& rng, std::size_t sampled_on_four) {
  std::vector<FiniteTopology> out;
  for (std::size_t n = 0; n <= 3; ++n)
    for (auto& t : all_topologies(FiniteGround::of_size(n))) out.push_back(std::move(t));
  const auto four = FiniteGround::of_size(4);
  for (std::size_t k = 0; k < sampled_on_four; ++k)
    out.push_back(random_topology(four, std::uniform_int_distribution<std::size_t>(0, 5)(rng), rng));
  return out;
}

// S ⊆ S' by OR-ing with a random set and finitely adding members.
std::pair<EPSet, EPSet> random_nested_pair(std::mt19937_64& rng) {
  const EPSet s = random_epset(rng);
  EPSet bigger = s;
  if (std::bernoulli_distribution(0.5)(rng)) bigger = bigger.unite(random_epset(rng));
  std::vector<Index> add;
  for (auto n : random_indices(rng, 3, 30))
    if (!bigger.contains(n)) add.push_back(n);
  std::sort(add.begin(), add.end());
  add.erase(std::unique(add.begin(), add.end()), add.end());
  bigger = bigger.finitely_change(add, {});
  return {s, bigger};
}

// ---------------------------------------------------------------------------

SuiteResult intseq(std::uint64_t seed, std::size_t budget) {
  Recorder rec("intseq");
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < budget; ++k) {
    const auto raw = oracle::random_raw(rng, 8, 12);
    const EPSet s(raw.prefix, raw.period);
    const Index horizon = raw.prefix.size() + 4 * std::max<std::size_t>(raw.period.size(), 1);
    const ExtNat g = s.gap(), cg = s.cogap();
    const ExtNat og = oracle::gap_oracle(raw, horizon), ocg = oracle::cogap_oracle(raw, horizon);
    rec.check(g == og, [&] { return "gap " + raw_text(raw) + ": " + g.to_string() + " vs oracle " + og.to_string(); });
    rec.check(cg == ocg,
              [&] { return "cogap " + raw_text(raw) + ": " + cg.to_string() + " vs oracle " + ocg.to_string(); });
    rec.check(cg == s.complement().gap(), [&] { return "cogap != gap(complement) for " + s.to_string(); });
    rec.check(s.complement().complement() == s, [&] { return "complement not an involution on " + s.to_string(); });

    // Canonical form: equal iff memberships agree on a window.
    const auto other = std::bernoulli_distribution(0.5)(rng) ? oracle::reencode(raw) : oracle::random_raw(rng, 8, 12);
    const EPSet t(other.prefix, other.period);
    const Index window =
        4 * std::max(raw.prefix.size() + raw.period.size(), other.prefix.size() + other.period.size()) + 1;
    bool agree = true;
    for (Index n = 1; n <= window && agree; ++n) agree = raw.member(n) == other.member(n);
    rec.check(agree == (s == t), [&] { return "canonical form " + raw_text(raw) + " vs " + raw_text(other); });

    const auto [small, big] = random_nested_pair(rng);
    rec.check(small.gap() >= big.gap() && small.cogap() <= big.cogap(),
              [&] { return "monotonicity " + small.to_string() + " within " + big.to_string(); });

    std::vector<Index> add, remove;
    for (auto n : random_indices(rng, 3, 40)) (s.contains(n) ? remove : add).push_back(n);
    for (auto* v : {&add, &remove}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    const EPSet changed = s.finitely_change(add, remove);
    rec.check(changed.gap() == s.gap() && changed.cogap() == s.cogap(),
              [&] { return "finite change moved gap/cogap: " + s.to_string() + " -> " + changed.to_string(); });
  }
  return rec.done();
}

SuiteResult families(std::uint64_t seed, std::size_t budget) {
  Recorder rec("families");
  if (budget == 0) return rec.done();
  std::mt19937_64 rng(seed);

  // Exhaustive over all families on |X| <= 3.
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto g = FiniteGround::of_size(n);
    const std::uint32_t subsets = g.subset_count();
    std::size_t both = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << subsets); ++code) {
      oracle::FamilyBits f(subsets);
      for (std::uint32_t b = 0; b < subsets; ++b) f[b] = (code >> b) & 1U;
      const bool ev = oracle::eventual(f, n), co = oracle::co_eventual(f, n);
      if (ev && co) ++both;
      const auto report = classify(family_of(g, f), 0);
      rec.check(report.eventual.holds == ev && report.co_eventual.holds == co &&
                    report.filter.holds == oracle::filter(f, n),
                [&] { return "classification of family code " + std::to_string(code) + " on |X|=" + std::to_string(n); });
    }
    rec.check(both == 2, [&] {
      return std::to_string(both) + " families on |X|=" + std::to_string(n) + " are eventual and co-eventual";
    });
  }

  // Star(cl F) = limit set, and the limit set is closed.
  const auto corpus = topology_corpus(rng, std::max<std::size_t>(1, budget / 5));
  for (const auto& t : corpus) {
    const std::size_t n = t.ground().size();
    const std::size_t fams = n <= 2 ? (std::size_t{1} << (1U << n)) : std::max<std::size_t>(1, budget / 20);
    for (std::size_t k = 0; k < fams; ++k) {
      oracle::FamilyBits f(1U << n);
      if (n <= 2) {
        for (std::size_t b = 0; b < f.size(); ++b) f[b] = (k >> b) & 1U;
      } else {
        f = random_family(rng, n);
      }
      const Family fam = family_of(t.ground(), f);
      const Subset lim = limit_set(fam, t);
      const auto star_cl = std::get<Subset>(star(closure_family(fam, t)));
      rec.check(lim == oracle::limit_set(f, t) && star_cl == lim && oracle::closed(lim, t),
                [&] { return "limit set on |X|=" + std::to_string(n) + ": " + t.ground().format(lim); });
    }
  }

  // Push preserves eventuality.
  for (std::size_t k = 0; k < budget; ++k) {
    const std::size_t nx = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    const std::size_t ny = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    FiniteMap f{FiniteGround::of_size(nx), FiniteGround::of_size(ny), {}};
    for (std::size_t x = 0; x < nx; ++x) f.image.push_back(std::uniform_int_distribution<std::size_t>(0, ny - 1)(rng));
    const auto fam = family_of(f.domain, random_eventual(rng, nx));
    const auto pushed = push(f, fam);
    rec.check(oracle::eventual(bits_of(pushed), ny), [&] { return "push lost eventuality: " + pushed.describe(); });
  }

  // H ⊆ E ⊆ G for the finitely-insensitive symbolic families.
  const std::vector<Family> symbolic = {Family::cofinite(),        Family::infinite(),
                                        Family::cogap_level(1),    Family::cogap_level(2),
                                        Family::cogap_level(5),    Family::cogap_level(ExtNat::infinity()),
                                        Family::level(Multifamily::cogap(), 3)};
  for (std::size_t k = 0; k < budget; ++k) {
    const EPSet s = random_epset(rng);
    const bool h = Family::cofinite().contains(s), g = Family::infinite().contains(s);
    for (const auto& e : symbolic) {
      const bool in = e.contains(s);
      rec.check((!h || in) && (!in || g), [&] { return "H <= " + e.describe() + " <= G fails on " + s.to_string(); });
    }
  }
  return rec.done();
}

SuiteResult multisets(std::uint64_t seed, std::size_t budget) {
  Recorder rec("multisets");
  if (budget == 0) return rec.done();
  std::mt19937_64 rng(seed);

  for (std::size_t n = 0; n <= 3; ++n) {
    const auto g = FiniteGround::of_size(n);
    const std::uint32_t subsets = g.subset_count();
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << subsets); ++code) {
      oracle::FamilyBits f(subsets);
      for (std::uint32_t b = 0; b < subsets; ++b) f[b] = (code >> b) & 1U;
      const auto r = mf_classify(Multifamily::indicator(family_of(g, f)), 0);
      rec.check(r.increasing.holds == oracle::eventual(f, n) && r.decreasing.holds == oracle::co_eventual(f, n),
                [&] { return "indicator bridge, family code " + std::to_string(code) + " on |X|=" + std::to_string(n); });
    }
  }

  for (std::size_t k = 0; k < budget; ++k) {
    const EPSet s = random_epset(rng);
    const ExtNat g = s.gap();
    if (g.is_finite()) {
      // The maximal gap occurs between consecutive members in the first
      // two periods after the prefix.
      const Index lo = s.prefix().size() + 1, hi = s.prefix().size() + 3 * s.period().size();
      bool seen = false;
      Index last = 0;
      for (Index n = lo; n <= hi && !seen; ++n) {
        if (!s.contains(n)) continue;
        if (last != 0 && n - last - 1 == g.value()) seen = true;
        last = n;
      }
      rec.check(seen, [&] { return "gap " + g.to_string() + " not attained in the period of " + s.to_string(); });
    }
    const auto [small, big] = random_nested_pair(rng);
    for (ExtNat c : {ExtNat(1), ExtNat(2), ExtNat(3), ExtNat::infinity()}) {
      const Family level = level_family(Multifamily::cogap(), c);
      rec.check(!level.contains(small) || level.contains(big),
                [&] { return "level " + c.to_string() + " not eventual: " + small.to_string() + " within " + big.to_string(); });
    }
  }
  for (ExtNat c : {ExtNat(1), ExtNat(2), ExtNat(3), ExtNat::infinity()}) {
    const auto r = classify(level_family(Multifamily::cogap(), c), 0);
    rec.check(r.eventual.holds && r.eventual.evidence == Evidence::Exact,
              [&] { return "coGap level " + c.to_string() + " not exactly eventual"; });
  }

  // multiset_limit = mstar(closure) for random increasing tables.
  for (const auto& t : topology_corpus(rng, std::max<std::size_t>(1, budget / 5))) {
    const auto& g = t.ground();
    for (std::size_t rep = 0; rep < 3; ++rep) {
      std::vector<ExtNat> base(g.subset_count());
      std::uniform_int_distribution<int> value(0, 5);
      for (auto& v : base) {
        const int r = value(rng);
        v = r == 5 ? ExtNat::infinity() : ExtNat(static_cast<std::uint64_t>(r));
      }
      std::vector<std::pair<Subset, ExtNat>> table;
      for (std::uint32_t b = 0; b < g.subset_count(); ++b) {
        ExtNat best = 0;
        for (std::uint32_t a = 0; a < g.subset_count(); ++a)
          if ((a & b) == a) best = std::max(best, base[a]);
        table.emplace_back(Subset{b}, best);
      }
      const auto m = Multifamily::explicit_table(g, table);
      const auto lhs = multiset_limit(m, t), rhs = mstar(mf_closure(m, t));
      rec.check(lhs == rhs, [&] { return "multiset_limit differs from mstar(closure) on |X|=" + std::to_string(g.size()); });
    }
  }
  return rec.done();
}

SetSequence random_sequence(std::mt19937_64& rng, bool with_limit) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
  std::vector<EPSet> traces;
  for (std::size_t x = 0; x < n; ++x) {
    if (with_limit) {
      // Eventually constant: finite or cofinite.
      std::vector<bool> prefix;
      const std::size_t p = std::uniform_int_distribution<std::size_t>(0, 8)(rng);
      for (std::size_t k = 0; k < p; ++k) prefix.push_back(std::bernoulli_distribution(0.5)(rng));
      const bool tail = std::bernoulli_distribution(0.5)(rng);
      traces.emplace_back(prefix, tail ? std::vector<bool>{true} : std::vector<bool>{});
    } else {
      traces.push_back(random_epset(rng));
    }
  }
  return SetSequence(FiniteGround::of_size(n), std::move(traces));
}

SuiteResult setlimits(std::uint64_t seed, std::size_t budget) {
  Recorder rec("setlimits");
  std::mt19937_64 rng(seed);
  const std::vector<Family> es = {Family::infinite(), Family::cofinite(), Family::cogap_level(1),
                                  Family::cogap_level(2), Family::cogap_level(5)};
  for (std::size_t k = 0; k < budget; ++k) {
    const SetSequence seq = random_sequence(rng, false);
    const auto cl = classical_limits(seq);
    const auto& g = seq.ground();
    rec.check(cl.limsup == oracle::limsup(seq) && cl.liminf == oracle::liminf(seq),
              [&] { return "limsup/liminf disagree with the window scan on " + std::to_string(g.size()) + " traces"; });
    for (const auto& e : es) {
      const Subset lim = e_limit(e, seq);
      rec.check(cl.liminf.is_subset_of(lim) && lim.is_subset_of(cl.limsup),
                [&] { return "sandwich fails for " + e.describe() + ": " + g.format(lim); });
    }
    for (ExtNat c : {ExtNat(1), ExtNat(2), ExtNat(5)}) {
      const Subset lim = e_limit(Family::cogap_level(c), seq);
      rec.check(lim == oracle::cogap_level_limit(seq, c),
                [&] { return "coGap_" + c.to_string() + " limit disagrees with run scan: " + g.format(lim); });
    }
    const SetSequence conv = random_sequence(rng, true);
    for (const auto& e : es) {
      const auto r = verify_limit_theorem(conv, e);
      rec.check(r.status == LimitTheoremCheck::Status::Holds,
                [&] { return "limit theorem " + to_string(r.status) + " for " + e.describe() + ": " + r.detail; });
    }
  }
  return rec.done();
}

SuiteResult cfp_suite(std::uint64_t seed, std::size_t budget) {
  using namespace cfp;
  Recorder rec("cfp");
  if (budget == 0) return rec.done();
  std::mt19937_64 rng(seed);
  const std::vector<OperatorKind> kinds = {OperatorKind::Halfspace, OperatorKind::Hyperplane, OperatorKind::Ball,
                                           OperatorKind::Box,       OperatorKind::Affine,     OperatorKind::Subgradient,
                                           OperatorKind::Averaged,  OperatorKind::Relaxed};
  for (std::size_t k = 0; k < budget; ++k) {
    const auto kind = kinds[k % kinds.size()];
    const std::size_t dim = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const auto sop = random_operator(kind, dim, rng);
    const Vector x = random_point(rng, dim, 5.0), y = random_point(rng, dim, 5.0);
    const Vector z = sop.fix_point(rng);
    rec.check(cutter_check(sop.op, x, z), [&] { return "cutter inequality fails for " + sop.op.describe(); });
    if (sop.op.is_firmly_nonexpansive())
      rec.check(fne_check(sop.op, x, y), [&] { return "firm nonexpansiveness fails for " + sop.op.describe(); });
    const double lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    rec.check(cutter_check(relax(sop.op, lambda), x, z),
              [&] { return "relaxation by " + std::to_string(lambda) + " breaks the cutter check of " + sop.op.describe(); });
    const double mu = std::uniform_real_distribution<double>(1e-3, 2.0)(rng);
    rec.check(relax(sop.op, mu).in_fix(z), [&] { return "relaxation moved a fixed point of " + sop.op.describe(); });
    if (sop.op.is_projection()) {
      const Vector p = sop.op.apply(x);
      rec.check((sop.op.apply(p) - p).norm() <= 1e-12 * (1.0 + p.norm()),
                [&] { return "projection not idempotent: " + sop.op.describe(); });
    }
  }

  // Fejér monotonicity and replay on random feasible runs with lambda in [0, 2].
  const std::size_t runs = std::max<std::size_t>(1, budget / 50);
  for (std::size_t k = 0; k < runs; ++k) {
    const auto inst = random_feasible_instance(rng, 5, 10, 0.1);
    std::vector<double> lambdas(7);
    for (auto& l : lambdas) l = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const auto trace = acsa_run(inst.ops, Control::almost_cyclic(inst.pattern), Relaxation::sequence(lambdas), inst.x0,
                                {1e-9, 2000, 10});
    const auto bad = fejer_violations(trace, inst.center);
    rec.check(bad == 0, [&] { return std::to_string(bad) + " Fejér violations in run " + std::to_string(k); });
    const auto rep = replay(trace, inst.ops);
    rec.check(rep.ok, [&] { return "replay mismatch: " + rep.detail; });
  }
  return rec.done();
}

SuiteResult analysis_suite(std::uint64_t seed, std::size_t budget) {
  using namespace cfp;
  Recorder rec("analysis");
  if (budget == 0) return rec.done();
  std::mt19937_64 rng(seed);
  const std::size_t runs = std::max<std::size_t>(1, budget / 50);
  for (std::size_t k = 0; k < runs; ++k) {
    const auto inst = random_feasible_instance(rng, 5, 10, 0.1);
    const auto ctrl = Control::almost_cyclic(inst.pattern);
    const std::size_t c = control_validate(ctrl, inst.ops.size(), inst.pattern.size());
    const auto trace = acsa_run(inst.ops, ctrl, Relaxation::constant(1.0), inst.x0, {1e-6, 10000, 10});
    for (std::size_t i = 0; i < inst.ops.size(); ++i) {
      const auto rep = analysis::follows_check(trace, inst.ops, i, true, c + 1);
      std::vector<bool> flags(trace.steps());
      for (std::size_t q = 0; q < trace.steps(); ++q) {
        const Vector& x = trace.iterates[q];
        const Vector t = x + trace.lambdas[q] * (inst.ops[i].apply(x) - x);
        flags[q] = (trace.iterates[q + 1] - t).norm() <= analysis::kWitnessTolerance;
      }
      const auto expect = oracle::min_window(flags);
      rec.check(rep.min_c == expect, [&] { return "min_c differs from the window scan for operator " + std::to_string(i + 1); });
      if (!rep.min_c) continue;
      // Sets made of runs of min_c + 1 consecutive naturals.
      const std::size_t run = *rep.min_c + 1;
      const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
      if (offset + run > trace.steps()) continue;
      std::vector<bool> prefix(offset, false), period(run, true);
      period.resize(run + std::uniform_int_distribution<std::size_t>(0, 4)(rng), false);
      const EPSet s(prefix, period);
      rec.check(s.cogap() >= ExtNat(run) && analysis::witness_in(rep, s).has_value(),
                [&] { return "no witness pair inside " + s.to_string(); });
    }
    const std::size_t n0 = trace.iterates.size() / 2;
    const auto est = analysis::cogap_limit_estimate(trace.iterates, analysis::kDefaultLadder, n0);
    for (const auto& cand : est.candidates)
      rec.check(std::is_sorted(cand.run_stats.rbegin(), cand.run_stats.rend()),
                [&] { return "run statistic increases as eps shrinks"; });
    const auto cert = analysis::certify_fixed_points(trace, inst.ops, 1e-5, n0, 1e-5);
    for (const auto& fc : cert.checks)
      rec.check(fc.residual <= 1e-4, [&] { return "candidate violates Fix of operator " + std::to_string(fc.op + 1); });
  }

  // The alternating sequence: -1 recurs in runs of length one, n escapes.
  std::vector<Vector> xs;
  for (int n = 1; n <= 400; ++n) xs.push_back(Vector::Constant(1, n % 2 == 0 ? n / 2 : -1.0));
  const auto est = analysis::cogap_limit_estimate(xs, analysis::kDefaultLadder, xs.size() / 2);
  bool ok = est.candidates.size() == 1 && est.candidates[0].point[0] == -1.0 && !est.limit;
  if (ok)
    for (auto v : est.candidates[0].run_stats) ok &= v == 1;
  rec.check(ok, [] { return "alternating sequence: expected the single candidate -1 with run 1 and no limit"; });
  return rec.done();
}

}  // namespace

SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t budget) {
  if (name == "intseq") return intseq(seed, budget);
  if (name == "families") return families(seed, budget);
  if (name == "multisets") return multisets(seed, budget);
  if (name == "setlimits") return setlimits(seed, budget);
  if (name == "cfp") return cfp_suite(seed, budget);
  if (name == "analysis") return analysis_suite(seed, budget);
  throw std::invalid_argument("unknown suite \"" + name + "\"");
}

}  // namespace evfam::checks
