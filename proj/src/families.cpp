#include "evfam/families.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "evfam/multisets.hpp"
#include "evfam/sampling.hpp"

namespace evfam {

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Empty: return "empty";
    case FamilyKind::All: return "all";
    case FamilyKind::Cofinite: return "cofinite";
    case FamilyKind::Infinite: return "infinite";
    case FamilyKind::CoGapLevel: return "cogap_level";
    case FamilyKind::Indicator: return "indicator";
    case FamilyKind::Predicate: return "predicate";
    case FamilyKind::Pushed: return "pushed";
    case FamilyKind::Level: return "level";
  }
  return "?";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Increasing: return "increasing";
    case Direction::Decreasing: return "decreasing";
    case Direction::Constant: return "constant";
    case Direction::Unknown: return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Maps

std::size_t SequenceMap::at(Index n) const {
  if (n == 0) throw std::invalid_argument("SequenceMap: indices start at 1");
  if (n <= prefix.size()) return prefix[n - 1];
  return period[(n - 1 - prefix.size()) % period.size()];
}

Ground domain_of(const PointMap& f) {
  if (const auto* fm = std::get_if<FiniteMap>(&f)) return fm->domain;
  return Naturals{};
}

const FiniteGround& codomain_of(const PointMap& f) {
  return std::visit([](const auto& m) -> const FiniteGround& { return m.codomain; }, f);
}

void validate(const PointMap& f) {
  auto check = [&](std::size_t y) {
    if (y >= codomain_of(f).size()) throw std::invalid_argument("map value outside the codomain");
  };
  if (const auto* fm = std::get_if<FiniteMap>(&f)) {
    if (fm->image.size() != fm->domain.size()) throw std::invalid_argument("FiniteMap: image size differs from domain size");
    for (auto y : fm->image) check(y);
    return;
  }
  const auto& sm = std::get<SequenceMap>(f);
  if (sm.period.empty()) throw std::invalid_argument("SequenceMap: period must be nonempty");
  for (auto y : sm.prefix) check(y);
  for (auto y : sm.period) check(y);
}

SetRep preimage(const PointMap& f, Subset s) {
  if (const auto* fm = std::get_if<FiniteMap>(&f)) {
    Subset out;
    for (std::size_t x = 0; x < fm->image.size(); ++x)
      if (s.contains(fm->image[x])) out = out.with(x);
    return out;
  }
  const auto& sm = std::get<SequenceMap>(f);
  std::vector<bool> prefix(sm.prefix.size()), period(sm.period.size());
  for (std::size_t i = 0; i < sm.prefix.size(); ++i) prefix[i] = s.contains(sm.prefix[i]);
  for (std::size_t i = 0; i < sm.period.size(); ++i) period[i] = s.contains(sm.period[i]);
  return EPSet(std::move(prefix), std::move(period));
}

// ---------------------------------------------------------------------------
// Family

struct Family::Node {
  FamilyKind kind = FamilyKind::Empty;
  Ground ground = Naturals{};
  ExtNat c;
  std::vector<Subset> sets;
  std::vector<bool> table;
  SetPredicate test;
  Direction declared = Direction::Unknown;
  std::optional<PointMap> map;
  std::optional<Family> inner;
  std::shared_ptr<const Multifamily> mf;
};

Family Family::empty(Ground ground) {
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Empty;
  n->ground = std::move(ground);
  return Family(std::move(n));
}

Family Family::all(Ground ground) {
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::All;
  n->ground = std::move(ground);
  return Family(std::move(n));
}

Family Family::cofinite() {
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Cofinite;
  return Family(std::move(n));
}

Family Family::infinite() {
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Infinite;
  return Family(std::move(n));
}

Family Family::cogap_level(ExtNat c) {
  if (c == ExtNat(0)) throw std::invalid_argument("cogap_level: c must be at least 1");
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::CoGapLevel;
  n->c = c;
  return Family(std::move(n));
}

Family Family::indicator(FiniteGround ground, std::vector<Subset> sets) {
  for (auto s : sets)
    if (!s.is_subset_of(ground.full())) throw std::invalid_argument("indicator: set outside the ground");
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Indicator;
  n->table.assign(ground.subset_count(), false);
  for (auto s : sets) n->table[s.bits] = true;
  n->sets = std::move(sets);
  n->ground = std::move(ground);
  return Family(std::move(n));
}

Family Family::predicate(Ground ground, SetPredicate test, Direction declared) {
  if (!test) throw std::invalid_argument("predicate: empty test");
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Predicate;
  n->ground = std::move(ground);
  n->test = std::move(test);
  n->declared = declared;
  return Family(std::move(n));
}

Family Family::pushed(PointMap f, Family inner) {
  validate(f);
  if (domain_of(f) != inner.ground()) throw std::invalid_argument("push: family ground differs from map domain");
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Pushed;
  n->ground = codomain_of(f);
  n->map = std::move(f);
  n->inner = std::move(inner);
  return Family(std::move(n));
}

Family Family::level(Multifamily m, ExtNat c) {
  auto n = std::make_shared<Node>();
  n->kind = FamilyKind::Level;
  n->ground = m.ground();
  n->c = c;
  n->mf = std::make_shared<const Multifamily>(std::move(m));
  return Family(std::move(n));
}

FamilyKind Family::kind() const { return node_->kind; }
const Ground& Family::ground() const { return node_->ground; }

namespace {

void check_representation(const Ground& g, const SetRep& s) {
  if (is_naturals(g)) {
    if (!std::holds_alternative<EPSet>(s))
      throw std::invalid_argument("sets over the naturals must be given as EPSets");
    return;
  }
  const auto* sub = std::get_if<Subset>(&s);
  if (sub == nullptr) throw std::invalid_argument("sets over a finite ground must be given as explicit subsets");
  if (!sub->is_subset_of(std::get<FiniteGround>(g).full()))
    throw std::invalid_argument("subset contains elements outside the ground");
}

}  // namespace

bool Family::contains(const SetRep& s) const {
  const Node& n = *node_;
  check_representation(n.ground, s);
  switch (n.kind) {
    case FamilyKind::Empty: return false;
    case FamilyKind::All: return true;
    case FamilyKind::Cofinite: return std::get<EPSet>(s).is_cofinite();
    case FamilyKind::Infinite: return !std::get<EPSet>(s).is_finite();
    case FamilyKind::CoGapLevel: return std::get<EPSet>(s).cogap() >= n.c;
    case FamilyKind::Indicator: return n.table[std::get<Subset>(s).bits];
    case FamilyKind::Predicate: return n.test(s);
    case FamilyKind::Pushed: return n.inner->contains(preimage(*n.map, std::get<Subset>(s)));
    case FamilyKind::Level: return n.mf->value(s) >= n.c;
  }
  return false;
}

bool Family::is_exact() const {
  switch (node_->kind) {
    case FamilyKind::Predicate: return false;
    case FamilyKind::Pushed: return node_->inner->is_exact();
    case FamilyKind::Level: return node_->mf->is_exact();
    default: return true;
  }
}

Direction Family::declared_direction() const { return node_->declared; }

ExtNat Family::threshold() const {
  if (node_->kind != FamilyKind::CoGapLevel && node_->kind != FamilyKind::Level)
    throw std::logic_error("threshold: family has no level");
  return node_->c;
}

const std::vector<Subset>& Family::sets() const { return node_->sets; }

const PointMap& Family::push_map() const {
  if (!node_->map) throw std::logic_error("push_map: not a pushed family");
  return *node_->map;
}

const Family& Family::inner() const {
  if (!node_->inner) throw std::logic_error("inner: not a pushed family");
  return *node_->inner;
}

const Multifamily& Family::multifamily() const {
  if (!node_->mf) throw std::logic_error("multifamily: not a level family");
  return *node_->mf;
}

std::string Family::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case FamilyKind::Empty: return "Empty";
    case FamilyKind::All: return "All";
    case FamilyKind::Cofinite: return "H (cofinite subsets of N)";
    case FamilyKind::Infinite: return "G (infinite subsets of N)";
    case FamilyKind::CoGapLevel: return "coGap_" + n.c.to_string() + " (cogap(S) >= " + n.c.to_string() + ")";
    case FamilyKind::Indicator: {
      const auto& g = std::get<FiniteGround>(n.ground);
      std::string out = "Indicator{";
      for (std::size_t i = 0; i < n.sets.size(); ++i) out += (i ? "," : "") + g.format(n.sets[i]);
      return out + "}";
    }
    case FamilyKind::Predicate: return "Predicate(" + to_string(n.declared) + ")";
    case FamilyKind::Pushed: return "Push(f, " + n.inner->describe() + ")";
    case FamilyKind::Level: return "Level(" + n.mf->describe() + ", " + n.c.to_string() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Classification

namespace {

Verdict exact(bool holds, std::string witness = {}) { return {holds, Evidence::Exact, std::move(witness)}; }

std::string pair_witness(const std::string& a, const char* rel, const std::string& b) { return a + " " + rel + " " + b; }

std::vector<bool> membership_table(const Family& f) {
  const auto& g = std::get<FiniteGround>(f.ground());
  std::vector<bool> table(g.subset_count());
  for (std::uint32_t b = 0; b < g.subset_count(); ++b) table[b] = f.contains(Subset{b});
  return table;
}

struct TableVerdicts {
  Verdict eventual, co_eventual, intersections, insensitive;
  std::size_t cases = 0;
};

TableVerdicts classify_table(const std::vector<bool>& table, const FiniteGround& g) {
  TableVerdicts v;
  v.eventual = v.co_eventual = v.intersections = v.insensitive = exact(true);
  const std::uint32_t count = g.subset_count();
  const std::size_t n = g.size();
  for (std::uint32_t b = 0; b < count; ++b) {
    if (!table[b]) continue;
    for (std::size_t i = 0; i < n; ++i) {
      ++v.cases;
      const Subset s{b};
      if (!s.contains(i) && !table[s.with(i).bits] && v.eventual.holds)
        v.eventual = exact(false, pair_witness(g.format(s) + " in F", "but superset", g.format(s.with(i)) + " not in F"));
      if (s.contains(i) && !table[s.without(i).bits] && v.co_eventual.holds)
        v.co_eventual = exact(false, pair_witness(g.format(s) + " in F", "but subset", g.format(s.without(i)) + " not in F"));
    }
  }
  for (std::uint32_t a = 0; a < count && v.intersections.holds; ++a) {
    if (!table[a]) continue;
    for (std::uint32_t b = a + 1; b < count; ++b) {
      ++v.cases;
      if (table[b] && !table[a & b]) {
        v.intersections = exact(false, g.format({a}) + " and " + g.format({b}) + " in F, intersection " +
                                           g.format({a & b}) + " not in F");
        break;
      }
    }
  }
  // Over a finite ground every two subsets differ by a finite change.
  const auto first_in = std::find(table.begin(), table.end(), true);
  const auto first_out = std::find(table.begin(), table.end(), false);
  if (first_in != table.end() && first_out != table.end()) {
    v.insensitive = exact(false, g.format({static_cast<std::uint32_t>(first_in - table.begin())}) + " in F, " +
                                     g.format({static_cast<std::uint32_t>(first_out - table.begin())}) + " not in F");
  }
  return v;
}

Verdict filter_from(const Verdict& eventual, const Verdict& intersections) {
  if (!eventual.holds) return {false, eventual.evidence, "not eventual: " + eventual.witness};
  Verdict r = intersections;
  if (eventual.evidence == Evidence::Sampled) r.evidence = Evidence::Sampled;
  return r;
}

std::string cogap_filter_witness(ExtNat c) {
  if (c.is_infinite() || c.value() > 4096) {
    return "S1 = union of [4^k, 2*4^k) and S2 = union of [2*4^k, 4^(k+1)) both have unbounded runs, S1 ∩ S2 = ∅";
  }
  const std::size_t len = c.value();
  std::vector<bool> p1(len + 1, true), p2(len + 1, true);
  p1[len] = false;
  p2[0] = false;
  const EPSet s1({}, p1), s2({}, p2);
  return s1.to_string() + " and " + s2.to_string() + " in F, intersection " + s1.intersect(s2).to_string() +
         " has cogap " + s1.intersect(s2).cogap().to_string();
}

// Sampled checks over EPSets or random subsets.
struct Sampler {
  const Family& f;
  std::mt19937_64 rng;
  std::size_t budget;
  std::size_t cases = 0;

  SetRep draw() {
    if (is_naturals(f.ground())) return random_epset(rng);
    return random_subset(rng, std::get<FiniteGround>(f.ground()));
  }
  SetRep unite(const SetRep& a, const SetRep& b) {
    if (const auto* e = std::get_if<EPSet>(&a)) return e->unite(std::get<EPSet>(b));
    return std::get<Subset>(a) | std::get<Subset>(b);
  }
  SetRep intersect(const SetRep& a, const SetRep& b) {
    if (const auto* e = std::get_if<EPSet>(&a)) return e->intersect(std::get<EPSet>(b));
    return std::get<Subset>(a) & std::get<Subset>(b);
  }
  std::string fmt(const SetRep& s) { return format(f.ground(), s); }

  Verdict upward(bool up) {
    for (std::size_t k = 0; k < budget; ++k) {
      ++cases;
      const SetRep s = draw();
      const SetRep other = draw();
      const SetRep t = up ? unite(s, other) : intersect(s, other);
      if (f.contains(s) && !f.contains(t))
        return {false, Evidence::Sampled,
                pair_witness(fmt(s) + " in F", up ? "but superset" : "but subset", fmt(t) + " not in F")};
    }
    return {true, Evidence::Sampled, {}};
  }

  Verdict intersections() {
    for (std::size_t k = 0; k < budget; ++k) {
      ++cases;
      const SetRep a = draw();
      const SetRep b = draw();
      if (f.contains(a) && f.contains(b) && !f.contains(intersect(a, b)))
        return {false, Evidence::Sampled,
                fmt(a) + " and " + fmt(b) + " in F, intersection " + fmt(intersect(a, b)) + " not in F"};
    }
    return {true, Evidence::Sampled, {}};
  }

  Verdict insensitive() {
    for (std::size_t k = 0; k < budget; ++k) {
      ++cases;
      if (is_naturals(f.ground())) {
        const EPSet s = random_epset(rng);
        auto add = random_indices(rng, 3, s.horizon() + 6);
        auto remove = random_indices(rng, 3, s.horizon() + 6);
        std::erase_if(remove, [&](Index n) { return std::find(add.begin(), add.end(), n) != add.end(); });
        const EPSet t = s.finitely_change(add, remove);
        if (f.contains(s) != f.contains(t))
          return {false, Evidence::Sampled, fmt(s) + " and its finite change " + fmt(t) + " disagree"};
      } else {
        const SetRep a = draw();
        const SetRep b = draw();
        if (f.contains(a) != f.contains(b))
          return {false, Evidence::Sampled, fmt(a) + " and " + fmt(b) + " disagree"};
      }
    }
    return {true, Evidence::Sampled, {}};
  }
};

FamilyReport symbolic_report(const Family& f) {
  const std::string nat = EPSet::naturals().to_string();
  const std::string none = EPSet::empty().to_string();
  const std::string down = pair_witness(nat + " in F", "but subset", none + " not in F");
  FamilyReport r;
  switch (f.kind()) {
    case FamilyKind::Empty:
    case FamilyKind::All:
      r.eventual = r.co_eventual = r.filter = r.finitely_insensitive = exact(true);
      break;
    case FamilyKind::Cofinite:
      r.eventual = exact(true);
      r.co_eventual = exact(false, down);
      r.filter = exact(true);
      r.finitely_insensitive = exact(true);
      break;
    case FamilyKind::Infinite:
      r.eventual = exact(true);
      r.co_eventual = exact(false, down);
      r.filter = exact(false, EPSet::residue_class(2, 0).to_string() + " and " + EPSet::residue_class(2, 1).to_string() +
                                  " in F, intersection " + none + " not in F");
      r.finitely_insensitive = exact(true);
      break;
    case FamilyKind::CoGapLevel:
      r.eventual = exact(true);
      r.co_eventual = exact(false, down);
      r.filter = exact(false, cogap_filter_witness(f.threshold()));
      r.finitely_insensitive = exact(true);
      break;
    default:
      throw std::logic_error("symbolic_report: not a symbolic family");
  }
  return r;
}

}  // namespace

FamilyReport classify(const Family& f, std::size_t budget, std::uint64_t seed) {
  const FamilyKind k = f.kind();
  if (k == FamilyKind::Empty || k == FamilyKind::All || k == FamilyKind::Cofinite || k == FamilyKind::Infinite ||
      k == FamilyKind::CoGapLevel)
    return symbolic_report(f);

  if (!is_naturals(f.ground()) && f.kind() != FamilyKind::Predicate) {
    const auto& g = std::get<FiniteGround>(f.ground());
    const auto tv = classify_table(membership_table(f), g);
    FamilyReport r;
    r.eventual = tv.eventual;
    r.co_eventual = tv.co_eventual;
    r.filter = filter_from(tv.eventual, tv.intersections);
    r.finitely_insensitive = tv.insensitive;
    r.cases = tv.cases;
    return r;
  }

  Sampler sampler{f, std::mt19937_64(seed), budget};
  FamilyReport r;
  std::optional<MultifamilyReport> mr;
  if (k == FamilyKind::Level) mr = mf_classify(f.multifamily(), budget, seed);

  r.eventual = (mr && mr->increasing.holds) ? mr->increasing : sampler.upward(true);
  r.co_eventual = (mr && mr->decreasing.holds) ? mr->decreasing : sampler.upward(false);
  r.filter = filter_from(r.eventual, sampler.intersections());
  r.finitely_insensitive = (mr && mr->finitely_insensitive.holds) ? mr->finitely_insensitive : sampler.insensitive();
  r.cases = sampler.cases;
  return r;
}

bool complement_duality_check(const Family& f) {
  const auto& g = finite_ground(f.ground());
  auto table = membership_table(f);
  const bool co_eventual = classify_table(table, g).co_eventual.holds;
  table.flip();
  const bool complement_eventual = classify_table(table, g).eventual.holds;
  return co_eventual == complement_eventual;
}

Family complement_family(const Family& f) {
  const auto& g = finite_ground(f.ground());
  std::vector<Subset> sets;
  for (std::uint32_t b = 0; b < g.subset_count(); ++b)
    if (!f.contains(Subset{b})) sets.push_back({b});
  return Family::indicator(g, std::move(sets));
}

SetRep star(const Family& f) {
  if (const auto* g = std::get_if<FiniteGround>(&f.ground())) {
    Subset out;
    for (std::size_t x = 0; x < g->size(); ++x)
      if (f.contains(Subset{}.with(x))) out = out.with(x);
    return out;
  }
  // Over the naturals every singleton is a finite change of the empty set,
  // so a finitely-insensitive family contains all singletons or none.
  if (!f.is_exact()) throw std::invalid_argument("star: refusing to evaluate an opaque family over the naturals");
  const auto report = classify(f, 0);
  if (!report.finitely_insensitive.holds || report.finitely_insensitive.evidence != Evidence::Exact)
    throw std::invalid_argument("star: family over the naturals is not known to be finitely-insensitive");
  return f.contains(EPSet::empty()) ? EPSet::naturals() : EPSet::empty();
}

Family push(const PointMap& f, const Family& family) { return Family::pushed(f, family); }

Subset limit_set(const Family& f, const FiniteTopology& t) {
  if (finite_ground(f.ground()) != t.ground()) throw std::invalid_argument("limit_set: family and topology grounds differ");
  Subset out;
  for (std::size_t x = 0; x < t.ground().size(); ++x) {
    const bool every_neighborhood = std::all_of(t.opens().begin(), t.opens().end(),
                                                [&](Subset u) { return !u.contains(x) || f.contains(u); });
    if (every_neighborhood) out = out.with(x);
  }
  return out;
}

Family closure_family(const Family& f, const FiniteTopology& t) {
  const auto& g = finite_ground(f.ground());
  if (g != t.ground()) throw std::invalid_argument("closure_family: family and topology grounds differ");
  std::vector<bool> open_in_f(t.opens().size());
  for (std::size_t k = 0; k < t.opens().size(); ++k) open_in_f[k] = f.contains(t.opens()[k]);
  std::vector<Subset> sets;
  for (std::uint32_t b = 0; b < g.subset_count(); ++b) {
    bool member = true;
    for (std::size_t k = 0; k < t.opens().size() && member; ++k)
      if (Subset{b}.is_subset_of(t.opens()[k]) && !open_in_f[k]) member = false;
    if (member) sets.push_back({b});
  }
  return Family::indicator(g, std::move(sets));
}

std::vector<Subset> enumerate_members(const Family& f) {
  const auto& g = finite_ground(f.ground());
  std::vector<Subset> out;
  for (std::uint32_t b = 0; b < g.subset_count(); ++b)
    if (f.contains(Subset{b})) out.push_back({b});
  return out;
}

}  // namespace evfam
