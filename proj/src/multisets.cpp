#include "evfam/multisets.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "evfam/sampling.hpp"

namespace evfam {

Subset Multiset::support() const {
  Subset s;
  for (std::size_t i = 0; i < mult.size(); ++i)
    if (mult[i] >= ExtNat(1)) s = s.with(i);
  return s;
}

std::string to_string(MultifamilyKind k) {
  switch (k) {
    case MultifamilyKind::Gap: return "gap";
    case MultifamilyKind::CoGap: return "cogap";
    case MultifamilyKind::Indicator: return "indicator";
    case MultifamilyKind::Complement: return "complement";
    case MultifamilyKind::Explicit: return "explicit";
    case MultifamilyKind::Pushed: return "pushed";
    case MultifamilyKind::Predicate: return "predicate";
  }
  return "?";
}

namespace {

Direction flip(Direction d) {
  switch (d) {
    case Direction::Increasing: return Direction::Decreasing;
    case Direction::Decreasing: return Direction::Increasing;
    default: return d;
  }
}

Direction combine(bool increasing, bool decreasing) {
  if (increasing && decreasing) return Direction::Constant;
  if (increasing) return Direction::Increasing;
  if (decreasing) return Direction::Decreasing;
  return Direction::Unknown;
}

bool is_increasing(Direction d) { return d == Direction::Increasing || d == Direction::Constant; }

SetRep complement_in(const Ground& g, const SetRep& s) {
  if (const auto* e = std::get_if<EPSet>(&s)) return e->complement();
  return std::get<FiniteGround>(g).complement(std::get<Subset>(s));
}

void check_representation(const Ground& g, const SetRep& s) {
  if (is_naturals(g) != std::holds_alternative<EPSet>(s))
    throw std::invalid_argument(is_naturals(g) ? "sets over the naturals must be given as EPSets"
                                               : "sets over a finite ground must be given as explicit subsets");
  if (const auto* sub = std::get_if<Subset>(&s); sub && !sub->is_subset_of(std::get<FiniteGround>(g).full()))
    throw std::invalid_argument("subset contains elements outside the ground");
}

struct TableVerdicts {
  Verdict increasing, decreasing, insensitive;
  std::size_t cases = 0;
};

TableVerdicts classify_values(const std::vector<ExtNat>& values, const FiniteGround& g) {
  TableVerdicts v{{true, Evidence::Exact, {}}, {true, Evidence::Exact, {}}, {true, Evidence::Exact, {}}, 0};
  for (std::uint32_t b = 0; b < g.subset_count(); ++b) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Subset s{b};
      if (s.contains(i)) continue;
      ++v.cases;
      const ExtNat lo = values[b];
      const ExtNat hi = values[s.with(i).bits];
      auto describe = [&] {
        return "phi(" + g.format(s) + ")=" + lo.to_string() + ", phi(" + g.format(s.with(i)) + ")=" + hi.to_string();
      };
      if (lo > hi && v.increasing.holds) v.increasing = {false, Evidence::Exact, describe()};
      if (lo < hi && v.decreasing.holds) v.decreasing = {false, Evidence::Exact, describe()};
    }
  }
  const auto odd = std::find_if(values.begin(), values.end(), [&](ExtNat x) { return x != values.front(); });
  if (odd != values.end()) {
    const Subset a{0}, b{static_cast<std::uint32_t>(odd - values.begin())};
    v.insensitive = {false, Evidence::Exact,
                     "phi(" + g.format(a) + ")=" + values.front().to_string() + ", phi(" + g.format(b) + ")=" + odd->to_string()};
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

struct Multifamily::Node {
  MultifamilyKind kind = MultifamilyKind::Gap;
  Ground ground = Naturals{};
  std::optional<Family> family;
  std::shared_ptr<const Multifamily> inner;
  std::optional<PointMap> map;
  std::vector<std::pair<Subset, ExtNat>> entries;
  std::vector<ExtNat> table;
  MultiplicityFn fn;
  Direction direction = Direction::Unknown;
};

Multifamily Multifamily::gap() {
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::Gap;
  n->direction = Direction::Decreasing;
  return Multifamily(std::move(n));
}

Multifamily Multifamily::cogap() {
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::CoGap;
  n->direction = Direction::Increasing;
  return Multifamily(std::move(n));
}

Multifamily Multifamily::indicator(Family f) {
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::Indicator;
  n->ground = f.ground();
  if (f.kind() == FamilyKind::Predicate) {
    n->direction = f.declared_direction();
  } else {
    const auto r = classify(f, 0);
    n->direction = combine(r.eventual.holds && r.eventual.evidence == Evidence::Exact,
                           r.co_eventual.holds && r.co_eventual.evidence == Evidence::Exact);
  }
  n->family = std::move(f);
  return Multifamily(std::move(n));
}

Multifamily Multifamily::complement_of(Multifamily inner) {
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::Complement;
  n->ground = inner.ground();
  n->direction = flip(inner.monotonicity());
  n->inner = std::make_shared<const Multifamily>(std::move(inner));
  return Multifamily(std::move(n));
}

Multifamily Multifamily::explicit_table(FiniteGround ground, std::vector<std::pair<Subset, ExtNat>> table) {
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::Explicit;
  n->table.assign(ground.subset_count(), ExtNat(0));
  for (const auto& [s, v] : table) {
    if (!s.is_subset_of(ground.full())) throw std::invalid_argument("explicit_table: set outside the ground");
    n->table[s.bits] = v;
  }
  for (std::uint32_t b = 0; b < ground.subset_count(); ++b)
    if (n->table[b] != ExtNat(0)) n->entries.emplace_back(Subset{b}, n->table[b]);
  const auto v = classify_values(n->table, ground);
  n->direction = combine(v.increasing.holds, v.decreasing.holds);
  n->ground = std::move(ground);
  return Multifamily(std::move(n));
}

Multifamily Multifamily::pushed(PointMap f, Multifamily inner) {
  validate(f);
  if (domain_of(f) != inner.ground()) throw std::invalid_argument("push: multifamily ground differs from map domain");
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::Pushed;
  n->ground = codomain_of(f);
  n->direction = inner.monotonicity();
  n->map = std::move(f);
  n->inner = std::make_shared<const Multifamily>(std::move(inner));
  return Multifamily(std::move(n));
}

Multifamily Multifamily::predicate(Ground ground, MultiplicityFn fn, Direction declared) {
  if (!fn) throw std::invalid_argument("predicate: empty function");
  auto n = std::make_shared<Node>();
  n->kind = MultifamilyKind::Predicate;
  n->ground = std::move(ground);
  n->fn = std::move(fn);
  n->direction = declared;
  return Multifamily(std::move(n));
}

MultifamilyKind Multifamily::kind() const { return node_->kind; }
const Ground& Multifamily::ground() const { return node_->ground; }
Direction Multifamily::monotonicity() const { return node_->direction; }

ExtNat Multifamily::value(const SetRep& s) const {
  const Node& n = *node_;
  check_representation(n.ground, s);
  switch (n.kind) {
    case MultifamilyKind::Gap: return std::get<EPSet>(s).gap();
    case MultifamilyKind::CoGap: return std::get<EPSet>(s).cogap();
    case MultifamilyKind::Indicator: return n.family->contains(s) ? ExtNat(1) : ExtNat(0);
    case MultifamilyKind::Complement: return n.inner->value(complement_in(n.ground, s));
    case MultifamilyKind::Explicit: return n.table[std::get<Subset>(s).bits];
    case MultifamilyKind::Pushed: return n.inner->value(preimage(*n.map, std::get<Subset>(s)));
    case MultifamilyKind::Predicate: return n.fn(s);
  }
  return ExtNat(0);
}

bool Multifamily::is_exact() const {
  switch (node_->kind) {
    case MultifamilyKind::Predicate: return false;
    case MultifamilyKind::Indicator: return node_->family->is_exact();
    case MultifamilyKind::Complement:
    case MultifamilyKind::Pushed: return node_->inner->is_exact();
    default: return true;
  }
}

const Multifamily& Multifamily::inner() const {
  if (!node_->inner) throw std::logic_error("inner: multifamily has no inner multifamily");
  return *node_->inner;
}

const Family& Multifamily::family() const {
  if (!node_->family) throw std::logic_error("family: not an indicator multifamily");
  return *node_->family;
}

const PointMap& Multifamily::push_map() const {
  if (!node_->map) throw std::logic_error("push_map: not a pushed multifamily");
  return *node_->map;
}

const std::vector<std::pair<Subset, ExtNat>>& Multifamily::table() const { return node_->entries; }

std::string Multifamily::describe() const {
  const Node& n = *node_;
  switch (n.kind) {
    case MultifamilyKind::Gap: return "Gap";
    case MultifamilyKind::CoGap: return "coGap";
    case MultifamilyKind::Indicator: return "Indicator(" + n.family->describe() + ")";
    case MultifamilyKind::Complement: return "(" + n.inner->describe() + ")^c";
    case MultifamilyKind::Explicit: return "Explicit[" + std::to_string(n.entries.size()) + " entries]";
    case MultifamilyKind::Pushed: return "Push(f, " + n.inner->describe() + ")";
    case MultifamilyKind::Predicate: return "Predicate(" + to_string(n.direction) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Multifamily mf_complement(const Multifamily& m) { return Multifamily::complement_of(m); }

ExtNat mf_value(const Multifamily& m, const SetRep& s) { return m.value(s); }

Family level_family(const Multifamily& m, ExtNat c) {
  if (c == ExtNat(0)) throw std::invalid_argument("level_family: c must be at least 1 (c = 0 gives the trivial family)");
  if (m.kind() == MultifamilyKind::CoGap) return Family::cogap_level(c);
  return Family::level(m, c);
}

MultifamilyReport mf_classify(const Multifamily& m, std::size_t budget, std::uint64_t seed) {
  const Verdict yes{true, Evidence::Exact, {}};
  const std::string up = "phi(" + EPSet::empty().to_string() + ") vs phi(" + EPSet::naturals().to_string() + ")";
  MultifamilyReport r;
  switch (m.kind()) {
    case MultifamilyKind::Gap:
      r.increasing = {false, Evidence::Exact, up + ": inf > 0"};
      r.decreasing = yes;
      r.finitely_insensitive = yes;
      return r;
    case MultifamilyKind::CoGap:
      r.increasing = yes;
      r.decreasing = {false, Evidence::Exact, up + ": 0 < inf"};
      r.finitely_insensitive = yes;
      return r;
    case MultifamilyKind::Complement: {
      auto inner = mf_classify(m.inner(), budget, seed);
      r.increasing = inner.decreasing;
      r.decreasing = inner.increasing;
      r.finitely_insensitive = inner.finitely_insensitive;
      for (Verdict* v : {&r.increasing, &r.decreasing, &r.finitely_insensitive})
        if (!v->holds) v->witness = "on complements: " + v->witness;
      r.cases = inner.cases;
      return r;
    }
    default:
      break;
  }

  if (!is_naturals(m.ground()) && m.kind() != MultifamilyKind::Predicate) {
    const auto& g = std::get<FiniteGround>(m.ground());
    std::vector<ExtNat> values(g.subset_count());
    for (std::uint32_t b = 0; b < g.subset_count(); ++b) values[b] = m.value(Subset{b});
    const auto v = classify_values(values, g);
    r.increasing = v.increasing;
    r.decreasing = v.decreasing;
    r.finitely_insensitive = v.insensitive;
    r.cases = v.cases;
    return r;
  }

  if (m.kind() == MultifamilyKind::Indicator) {
    const auto fr = classify(m.family(), budget, seed);
    r.increasing = fr.eventual;
    r.decreasing = fr.co_eventual;
    r.finitely_insensitive = fr.finitely_insensitive;
    r.cases = fr.cases;
    return r;
  }

  // Sampled: opaque predicates, or pushes into the naturals.
  std::mt19937_64 rng(seed);
  const Ground& g = m.ground();
  auto draw = [&]() -> SetRep {
    if (is_naturals(g)) return random_epset(rng);
    return random_subset(rng, std::get<FiniteGround>(g));
  };
  auto fmt = [&](const SetRep& s) { return format(g, s); };
  r.increasing = r.decreasing = r.finitely_insensitive = Verdict{true, Evidence::Sampled, {}};
  for (std::size_t k = 0; k < budget; ++k) {
    ++r.cases;
    const SetRep a = draw();
    const SetRep b = draw();
    SetRep big, fin;
    if (const auto* e = std::get_if<EPSet>(&a)) {
      big = e->unite(std::get<EPSet>(b));
      auto add = random_indices(rng, 3, e->horizon() + 6);
      fin = e->finitely_change(add, {});
    } else {
      big = std::get<Subset>(a) | std::get<Subset>(b);
      fin = b;
    }
    const ExtNat va = m.value(a), vb = m.value(big), vf = m.value(fin);
    auto pair = [&](const SetRep& x, ExtNat vx, const SetRep& y, ExtNat vy) {
      return "phi(" + fmt(x) + ")=" + vx.to_string() + ", phi(" + fmt(y) + ")=" + vy.to_string();
    };
    if (va > vb && r.increasing.holds) r.increasing = {false, Evidence::Sampled, pair(a, va, big, vb)};
    if (va < vb && r.decreasing.holds) r.decreasing = {false, Evidence::Sampled, pair(a, va, big, vb)};
    if (va != vf && r.finitely_insensitive.holds) r.finitely_insensitive = {false, Evidence::Sampled, pair(a, va, fin, vf)};
  }
  return r;
}

Multiset mstar(const Multifamily& m) {
  const auto& g = finite_ground(m.ground());
  Multiset out{g, std::vector<ExtNat>(g.size())};
  for (std::size_t x = 0; x < g.size(); ++x) out.mult[x] = m.value(Subset{}.with(x));
  return out;
}

Multifamily mpush(const PointMap& f, const Multifamily& m) { return Multifamily::pushed(f, m); }

namespace {

void require_increasing(const Multifamily& m, const FiniteTopology& t, const char* what) {
  if (finite_ground(m.ground()) != t.ground())
    throw std::invalid_argument(std::string(what) + ": multifamily and topology grounds differ");
  if (is_increasing(m.monotonicity())) return;
  if (m.monotonicity() == Direction::Unknown && m.kind() != MultifamilyKind::Predicate &&
      mf_classify(m, 0).increasing.holds)
    return;
  throw std::invalid_argument(std::string(what) + ": multifamily is not increasing");
}

}  // namespace

Multifamily mf_closure(const Multifamily& m, const FiniteTopology& t) {
  require_increasing(m, t, "mf_closure");
  const auto& g = t.ground();
  std::vector<ExtNat> open_values;
  for (auto u : t.opens()) open_values.push_back(m.value(u));
  std::vector<std::pair<Subset, ExtNat>> table;
  for (std::uint32_t b = 0; b < g.subset_count(); ++b) {
    ExtNat best = ExtNat::infinity();
    for (std::size_t k = 0; k < t.opens().size(); ++k)
      if (Subset{b}.is_subset_of(t.opens()[k])) best = std::min(best, open_values[k]);
    table.emplace_back(Subset{b}, best);
  }
  return Multifamily::explicit_table(g, std::move(table));
}

Multiset multiset_limit(const Multifamily& m, const FiniteTopology& t) {
  require_increasing(m, t, "multiset_limit");
  const auto& g = t.ground();
  Multiset out{g, std::vector<ExtNat>(g.size(), ExtNat::infinity())};
  for (auto u : t.opens()) {
    const ExtNat v = m.value(u);
    for (std::size_t x = 0; x < g.size(); ++x)
      if (u.contains(x)) out.mult[x] = std::min(out.mult[x], v);
  }
  return out;
}

}  // namespace evfam
