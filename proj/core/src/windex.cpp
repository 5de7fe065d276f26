#include "eqv/windex.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "eqv/error.hpp"

namespace eqv {

SetUniverse::SetUniverse(OrbitCategoryPtr oc, int bound) : oc_(std::move(oc)), bound_(bound) {
  if (bound_ < 0) throw InvalidArgument("bound must be nonnegative");
  const OrbitCategory& c = *oc_;
  const int levels = c.num_levels();
  sets_.resize(levels);
  offset_.assign(1, 0);
  for (int h = 0; h < levels; ++h) {
    sets_[h] = enumerate_sets(c, h, bound_);
    offset_.push_back(offset_.back() + static_cast<int>(sets_[h].size()));
  }
  empty_.resize(levels);
  point_.resize(levels);
  fold_.resize(levels);
  sum_.resize(levels);
  induce_.resize(levels);
  for (int h = 0; h < levels; ++h) {
    empty_[h] = index_of(empty_set(c, h));
    point_[h] = bound_ >= 1 ? index_of(point(c, h)) : -1;
    fold_[h] = bound_ >= 2 ? index_of(point(c, h, 2)) : -1;
    const int n = level_size(h);
    sum_[h].assign(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) sum_[h][a * n + b] = index_of(add(sets_[h][a], sets_[h][b]));
    induce_[h].resize(c.num_types(h));
    for (int t = 0; t < c.num_types(h); ++t) {
      const int k = c.type(h, t).cls;
      LevelSet single = empty_set(c, h);
      single.counts[t] = 1;
      for (const LevelSet& part : sets_[k]) {
        const bool fits = static_cast<long long>(cardinality(c, part)) * c.type(h, t).size <= bound_;
        induce_[h][t].push_back(fits ? index_of(indexed_coproduct(c, single, {part})) : -1);
      }
    }
  }
  restrict_.resize(c.num_morphisms());
  for (int m = 0; m < c.num_morphisms(); ++m)
    for (const LevelSet& s : sets_[c.morphism(m).tgt]) restrict_[m].push_back(index_of(restrict_along(c, s, m)));
}

int SetUniverse::index_of(const LevelSet& s) const {
  if (s.level < 0 || s.level >= num_levels()) throw InvalidArgument("level out of range");
  const auto& v = sets_[s.level];
  const auto it = std::lower_bound(v.begin(), v.end(), s, [&](const LevelSet& a, const LevelSet& b) {
    const int ca = cardinality(*oc_, a), cb = cardinality(*oc_, b);
    return ca != cb ? ca < cb : a.counts < b.counts;
  });
  return it != v.end() && *it == s ? static_cast<int>(it - v.begin()) : -1;
}

WeakIndexingSystem::WeakIndexingSystem(SetUniversePtr universe, std::vector<char> admissible, Repr repr,
                                       bool saturated)
    : universe_(std::move(universe)), bits_(std::move(admissible)), repr_(repr), saturated_(saturated) {
  if (static_cast<int>(bits_.size()) != universe_->total_size())
    throw InvalidArgument("admissibility vector does not match the universe");
}

bool WeakIndexingSystem::contains(const LevelSet& s) const {
  if (cardinality(category(), s) > bound())
    throw CapExceeded("set of cardinality " + std::to_string(cardinality(category(), s)) +
                      " exceeds the bound " + std::to_string(bound()));
  return contains_index(s.level, universe_->index_of(s));
}

std::vector<LevelSet> WeakIndexingSystem::admissible(int h) const {
  std::vector<LevelSet> out;
  for (int i = 0; i < universe_->level_size(h); ++i)
    if (contains_index(h, i)) out.push_back(universe_->set(h, i));
  return out;
}

bool WeakIndexingSystem::level_empty(int h) const {
  for (int i = 0; i < universe_->level_size(h); ++i)
    if (contains_index(h, i)) return false;
  return true;
}

namespace {

bool sparse_set(const OrbitCategory& oc, const LevelSet& s) {
  return is_sparse(to_gset_iso(s), oc.local_lattice(s.level)).has_value();
}

/// Largest sparse set at any level.
int max_sparse_cardinality(const OrbitCategory& oc) {
  int best = 0;
  for (int h = 0; h < oc.num_levels(); ++h)
    for (const GSetIso& s : sparse_sets(oc.local_lattice(h)))
      best = std::max(best, cardinality(oc, from_gset_iso(oc, h, s)));
  return best;
}

}  // namespace

std::vector<std::vector<LevelSet>> WeakIndexingSystem::sparse_generators() const {
  const OrbitCategory& oc = category();
  if (bound() < std::max(2, max_sparse_cardinality(oc)))
    throw CapExceeded("bound is below the largest sparse set; sparse generators are incomplete");
  std::vector<std::vector<LevelSet>> out(oc.num_levels());
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int i = 0; i < universe_->level_size(h); ++i) {
      if (!contains_index(h, i)) continue;
      const LevelSet& s = universe_->set(h, i);
      if (i == universe_->fold_index(h) || sparse_set(oc, s)) out[h].push_back(s);
    }
  return out;
}

WeakIndexingSystem WeakIndexingSystem::with_repr(Repr r) const {
  WeakIndexingSystem w = *this;
  w.repr_ = r;
  return w;
}

namespace {

/// Sets reachable at level h as indexed coproducts over s with every summand
/// drawn from `bits`. Sums past the bound set *saturated.
std::vector<char> coproducts_over(const SetUniverse& u, const std::vector<char>& bits, int h, int s,
                                  bool* saturated) {
  const OrbitCategory& oc = u.category();
  const int n = u.level_size(h);
  std::vector<char> reach(n, 0);
  reach[u.empty_index(h)] = 1;
  const LevelSet& set = u.set(h, s);
  for (int t = 0; t < oc.num_types(h); ++t) {
    const int k = oc.type(h, t).cls;
    for (int rep = 0; rep < set.counts[t]; ++rep) {
      std::vector<char> next(n, 0);
      for (int a = 0; a < n; ++a) {
        if (!reach[a]) continue;
        for (int j = 0; j < u.level_size(k); ++j) {
          if (!bits[u.offset(k) + j]) continue;
          const int x = u.induce(h, t, j);
          const int r = x < 0 ? -1 : u.sum(h, a, x);
          if (r < 0) {
            if (saturated) *saturated = true;
            continue;
          }
          next[r] = 1;
        }
      }
      reach.swap(next);
    }
  }
  return reach;
}

}  // namespace

std::vector<char> closure(const SetUniverse& u, std::vector<char> bits, bool* saturated) {
  const OrbitCategory& oc = u.category();
  if (static_cast<int>(bits.size()) != u.total_size()) throw InvalidArgument("family does not match the universe");
  bool sat = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m = 0; m < oc.num_morphisms(); ++m) {
      const auto& mor = oc.morphism(m);
      for (int i = 0; i < u.level_size(mor.tgt); ++i) {
        if (!bits[u.offset(mor.tgt) + i]) continue;
        char& b = bits[u.offset(mor.src) + u.restrict(m, i)];
        if (!b) b = 1, changed = true;
      }
    }
    for (int h = 0; h < oc.num_levels(); ++h) {
      bool any = false;
      for (int i = 0; i < u.level_size(h); ++i) any = any || bits[u.offset(h) + i];
      if (any && u.point_index(h) >= 0) {
        char& b = bits[u.offset(h) + u.point_index(h)];
        if (!b) b = 1, changed = true;
      }
    }
    for (int h = 0; h < oc.num_levels(); ++h)
      for (int i = 0; i < u.level_size(h); ++i) {
        if (!bits[u.offset(h) + i]) continue;
        const auto reach = coproducts_over(u, bits, h, i, &sat);
        for (int r = 0; r < u.level_size(h); ++r) {
          if (!reach[r]) continue;
          char& b = bits[u.offset(h) + r];
          if (!b) b = 1, changed = true;
        }
      }
  }
  if (saturated) *saturated = sat;
  return bits;
}

std::vector<WindexViolation> validate_family(const SetUniverse& u, const std::vector<char>& bits) {
  const OrbitCategory& oc = u.category();
  if (static_cast<int>(bits.size()) != u.total_size()) throw InvalidArgument("family does not match the universe");
  std::vector<WindexViolation> out;
  auto has = [&](int h, int i) { return bits[u.offset(h) + i] != 0; };
  for (int h = 0; h < oc.num_levels(); ++h) {
    bool any = false;
    for (int i = 0; i < u.level_size(h); ++i) any = any || has(h, i);
    if (any && u.point_index(h) >= 0 && !has(h, u.point_index(h)))
      out.push_back({"unit", h, point(oc, h), {}, point(oc, h), "level is nonempty but the point is not admissible"});
  }
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    for (int i = 0; i < u.level_size(mor.tgt); ++i) {
      const int r = u.restrict(m, i);
      if (has(mor.tgt, i) && !has(mor.src, r))
        out.push_back({"restriction", mor.tgt, u.set(mor.tgt, i), {}, u.set(mor.src, r),
                       "restriction along morphism " + std::to_string(m) + " is not admissible"});
    }
  }
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int s = 0; s < u.level_size(h); ++s) {
      if (!has(h, s)) continue;
      // dynamic program over the orbits of s, remembering one witness per sum
      const LevelSet& set = u.set(h, s);
      const int n = u.level_size(h);
      std::vector<std::vector<std::pair<int, int>>> parent;  // per step: (previous sum, part index)
      std::vector<int> orbit_levels;
      std::vector<char> reach(n, 0);
      reach[u.empty_index(h)] = 1;
      for (int t = 0; t < oc.num_types(h); ++t) {
        const int k = oc.type(h, t).cls;
        for (int rep = 0; rep < set.counts[t]; ++rep) {
          std::vector<std::pair<int, int>> par(n, {-1, -1});
          std::vector<char> next(n, 0);
          for (int a = 0; a < n; ++a) {
            if (!reach[a]) continue;
            for (int j = 0; j < u.level_size(k); ++j) {
              if (!has(k, j)) continue;
              const int x = u.induce(h, t, j);
              const int r = x < 0 ? -1 : u.sum(h, a, x);
              if (r < 0 || next[r]) continue;
              next[r] = 1;
              par[r] = {a, j};
            }
          }
          reach.swap(next);
          parent.push_back(std::move(par));
          orbit_levels.push_back(k);
        }
      }
      for (int r = 0; r < n; ++r) {
        if (!reach[r] || has(h, r)) continue;
        std::vector<LevelSet> parts(parent.size());
        int cur = r;
        for (int step = static_cast<int>(parent.size()) - 1; step >= 0; --step) {
          const auto [prev, j] = parent[step][cur];
          parts[step] = u.set(orbit_levels[step], j);
          cur = prev;
        }
        out.push_back({"coproduct", h, set, std::move(parts), u.set(h, r),
                       "indexed coproduct of admissible sets is not admissible"});
        break;
      }
    }
  return out;
}

std::vector<WindexViolation> validate(const WeakIndexingSystem& w) {
  return validate_family(w.universe(), w.bits());
}

WeakIndexingSystem from_generators(SetUniversePtr u, const std::vector<LevelSet>& gens, Repr repr) {
  std::vector<char> bits(u->total_size(), 0);
  for (const LevelSet& g : gens) {
    if (g.level < 0 || g.level >= u->num_levels() ||
        static_cast<int>(g.counts.size()) != u->category().num_types(g.level))
      throw InvalidArgument("generator is not a set at a level");
    const int i = u->index_of(g);
    if (i < 0) throw CapExceeded("generator exceeds the bound");
    bits[u->offset(g.level) + i] = 1;
  }
  bool sat = false;
  bits = closure(*u, std::move(bits), &sat);
  return WeakIndexingSystem(std::move(u), std::move(bits), repr, sat);
}

WeakIndexingSystem empty_system(SetUniversePtr u) {
  const int n = u->total_size();
  return WeakIndexingSystem(std::move(u), std::vector<char>(n, 0));
}

WeakIndexingSystem minimal_system(SetUniversePtr u) {
  std::vector<LevelSet> gens;
  for (int h = 0; h < u->num_levels(); ++h) gens.push_back(point(u->category(), h));
  return from_generators(std::move(u), gens);
}

WeakIndexingSystem complete_system(SetUniversePtr u) {
  const int n = u->total_size();
  return WeakIndexingSystem(std::move(u), std::vector<char>(n, 1));
}

bool is_member(const WeakIndexingSystem& w, const RealizedSet& t, const SetMap& f, const RealizedSet& s) {
  const OrbitCategory& oc = w.category();
  if (t.level != s.level || !is_map(oc, f, t, s, true)) throw InvalidArgument("not a map of sets at one level");
  const Fibers fib = fibers(oc, t, f, s);
  for (const RealizedSet& part : fib.sets)
    if (!w.contains(iso_class(oc, part))) return false;
  return true;
}

std::vector<LevelSet> fiber_classes(const OrbitCategory& oc, const GMap& f) {
  if (!f.is_equivariant()) throw InvalidArgument("map is not equivariant");
  const Group& G = oc.group();
  const GSet& s = f.target;
  const auto& acting = s.acting().elements;
  std::vector<char> seen(s.size(), 0);
  std::vector<LevelSet> out;
  for (int y = 0; y < s.size(); ++y) {
    if (seen[y]) continue;
    std::vector<int> stab;
    for (int a : acting) {
      seen[s.act(a, y)] = 1;
      if (s.act(a, y) == y) stab.push_back(a);
    }
    const Subgroup u{stab};
    std::vector<int> pts;
    for (int x = 0; x < f.source.size(); ++x)
      if (f.f[x] == y) pts.push_back(x);
    std::vector<std::vector<int>> action(G.order());
    for (int a : stab)
      for (int x : pts)
        action[a].push_back(static_cast<int>(std::lower_bound(pts.begin(), pts.end(), f.source.act(a, x)) - pts.begin()));
    const GSet fiber(oc.group_ptr(), u, static_cast<int>(pts.size()), std::move(action));
    out.push_back(level_iso_class(oc, conjugate(fiber, oc.lattice().to_rep(u))));
  }
  return out;
}

bool is_member(const WeakIndexingSystem& w, const GMap& f) {
  for (const LevelSet& s : fiber_classes(w.category(), f))
    if (!w.contains(s)) return false;
  return true;
}

namespace {

bool has_level_set(const WeakIndexingSystem& w, int h, int i) { return i >= 0 && w.contains_index(h, i); }

/// Every sub-multiset of s is admissible.
bool summands_admissible(const WeakIndexingSystem& w, const LevelSet& s) {
  LevelSet part = s;
  std::fill(part.counts.begin(), part.counts.end(), 0);
  while (true) {
    if (!has_level_set(w, s.level, w.universe().index_of(part))) return false;
    std::size_t i = 0;
    while (i < part.counts.size() && part.counts[i] == s.counts[i]) part.counts[i++] = 0;
    if (i == part.counts.size()) return true;
    ++part.counts[i];
  }
}

void check_same_group(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  if (!(a.category().group() == b.category().group()))
    throw InvalidArgument("systems are over different groups");
}

}  // namespace

Families families(const WeakIndexingSystem& w) {
  const SetUniverse& u = w.universe();
  Families f;
  for (int h = 0; h < u.num_levels(); ++h) {
    if (has_level_set(w, h, u.point_index(h))) f.colors.push_back(h);
    if (has_level_set(w, h, u.empty_index(h))) f.units.push_back(h);
    if (has_level_set(w, h, u.fold_index(h))) f.folds.push_back(h);
  }
  return f;
}

bool has_one_color(const WeakIndexingSystem& w) {
  for (int h = 0; h < w.universe().num_levels(); ++h)
    if (w.level_empty(h)) return false;
  return true;
}

bool is_unital(const WeakIndexingSystem& w) {
  if (!has_one_color(w)) return false;
  const SetUniverse& u = w.universe();
  for (int h = 0; h < u.num_levels(); ++h)
    for (int i = 0; i < u.level_size(h); ++i)
      if (w.contains_index(h, i) && !summands_admissible(w, u.set(h, i))) return false;
  return true;
}

bool is_aeu(const WeakIndexingSystem& w) {
  const SetUniverse& u = w.universe();
  for (int h = 0; h < u.num_levels(); ++h)
    for (int i = 0; i < u.level_size(h); ++i)
      if (i != u.point_index(h) && w.contains_index(h, i) && !summands_admissible(w, u.set(h, i))) return false;
  return true;
}

bool is_indexing_system(const WeakIndexingSystem& w) {
  const SetUniverse& u = w.universe();
  for (int h = 0; h < u.num_levels(); ++h) {
    if (!w.contains_index(h, u.empty_index(h))) return false;
    for (int a = 0; a < u.level_size(h); ++a) {
      if (!w.contains_index(h, a)) continue;
      for (int b = a; b < u.level_size(h); ++b) {
        if (!w.contains_index(h, b)) continue;
        const int s = u.sum(h, a, b);
        if (s >= 0 && !w.contains_index(h, s)) return false;
      }
    }
  }
  return true;
}

bool leq_truncated(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  check_same_group(a, b);
  const OrbitCategory& oc = a.category();
  const int bound = std::min(a.bound(), b.bound());
  for (int h = 0; h < oc.num_levels(); ++h)
    for (const LevelSet& s : a.admissible(h))
      if (cardinality(oc, s) <= bound && !b.contains(s)) return false;
  return true;
}

bool leq(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  check_same_group(a, b);
  if (!is_aeu(a)) return leq_truncated(a, b);
  for (const auto& level : a.sparse_generators())
    for (const LevelSet& s : level)
      if (!b.contains(s)) return false;
  return true;
}

bool leq_indexing(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  check_same_group(a, b);
  if (!is_indexing_system(a)) throw InvalidArgument("the lower system is not an indexing system");
  const OrbitCategory& oc = a.category();
  for (int h = 0; h < oc.num_levels(); ++h) {
    if (!b.contains(empty_set(oc, h)) || !b.contains(point(oc, h, 2))) return false;
    for (const LevelSet& s : a.admissible(h))
      if (is_transitive(s) && !b.contains(s)) return false;
  }
  return true;
}

WeakIndexingSystem join(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  check_same_group(a, b);
  if (a.bound() != b.bound()) throw InvalidArgument("join needs a common bound");
  std::vector<char> bits(a.bits().size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = a.bits()[i] || b.bits()[i];
  bool sat = false;
  bits = closure(a.universe(), std::move(bits), &sat);
  const Repr r = a.repr() == Repr::Sparse && b.repr() == Repr::Sparse ? Repr::Sparse : Repr::Truncated;
  return WeakIndexingSystem(a.universe_ptr(), std::move(bits), r, sat || a.saturated() || b.saturated());
}

WeakIndexingSystem meet(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
  check_same_group(a, b);
  if (a.bound() != b.bound()) throw InvalidArgument("meet needs a common bound");
  std::vector<char> bits(a.bits().size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = a.bits()[i] && b.bits()[i];
  const Repr r = a.repr() == Repr::Sparse && b.repr() == Repr::Sparse ? Repr::Sparse : Repr::Truncated;
  return WeakIndexingSystem(a.universe_ptr(), std::move(bits), r, a.saturated() && b.saturated());
}

namespace {

/// Lectic enumeration of the closed sets of a closure operator on n items.
template <class Close, class Visit>
void next_closure(int n, const Close& close, const Visit& visit) {
  std::vector<char> a = close(std::vector<char>(n, 0));
  while (true) {
    visit(a);
    bool found = false;
    for (int i = n - 1; i >= 0 && !found; --i) {
      if (a[i]) {
        a[i] = 0;
        continue;
      }
      std::vector<char> probe = a;
      probe[i] = 1;
      std::vector<char> b = close(probe);
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = b[j] == a[j];
      if (ok) {
        a = std::move(b);
        found = true;
      }
    }
    if (!found) return;
  }
}

/// Transitive non-point orbit types, as (level, type).
std::vector<std::pair<int, int>> transfer_items(const OrbitCategory& oc) {
  std::vector<std::pair<int, int>> items;
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int t = 0; t < oc.num_types(h); ++t)
      if (t != oc.point_type(h)) items.push_back({h, t});
  return items;
}

std::vector<char> indexing_bits(const SetUniverse& u, const std::vector<std::pair<int, int>>& transfers) {
  const OrbitCategory& oc = u.category();
  if (u.bound() < std::max(2, oc.group().order()))
    throw InvalidArgument("indexing systems need a bound of at least max(2, |G|)");
  std::vector<char> bits(u.total_size(), 0);
  for (int h = 0; h < oc.num_levels(); ++h) {
    bits[u.offset(h) + u.empty_index(h)] = 1;
    bits[u.offset(h) + u.point_index(h)] = 1;
    bits[u.offset(h) + u.fold_index(h)] = 1;
  }
  for (const auto& [h, t] : transfers) {
    LevelSet s = empty_set(oc, h);
    s.counts[t] = 1;
    bits[u.offset(h) + u.index_of(s)] = 1;
  }
  return closure(u, std::move(bits));
}

}  // namespace

WeakIndexingSystem indexing_completion(SetUniversePtr u, const std::vector<std::pair<int, int>>& transfers) {
  auto bits = indexing_bits(*u, transfers);
  return WeakIndexingSystem(std::move(u), std::move(bits));
}

std::vector<WeakIndexingSystem> enumerate(SetUniversePtr u, EnumMode mode, std::size_t cap) {
  std::vector<WeakIndexingSystem> out;
  if (mode == EnumMode::ExactIndexing) {
    const OrbitCategory& oc = u->category();
    const auto items = transfer_items(oc);
    auto selected = [&](const std::vector<char>& x) {
      std::vector<std::pair<int, int>> t;
      for (std::size_t i = 0; i < items.size(); ++i)
        if (x[i]) t.push_back(items[i]);
      return t;
    };
    auto project = [&](const std::vector<char>& bits) {
      std::vector<char> x(items.size(), 0);
      for (std::size_t i = 0; i < items.size(); ++i) {
        LevelSet s = empty_set(oc, items[i].first);
        s.counts[items[i].second] = 1;
        const int idx = u->index_of(s);
        x[i] = bits[u->offset(s.level) + idx];
      }
      return x;
    };
    next_closure(
        static_cast<int>(items.size()), [&](const std::vector<char>& x) { return project(indexing_bits(*u, selected(x))); },
        [&](const std::vector<char>& x) {
          if (out.size() >= cap) throw CapExceeded("too many indexing systems");
          out.push_back(indexing_completion(u, selected(x)));
        });
    return out;
  }
  if (mode == EnumMode::Sparse) {
    // aEU systems are the closures of their sparse generators
    const OrbitCategory& oc = u->category();
    if (u->bound() < std::max(2, max_sparse_cardinality(oc)))
      throw InvalidArgument("sparse enumeration needs a bound covering every sparse set");
    std::vector<std::pair<int, int>> items;  // (level, index)
    for (int h = 0; h < oc.num_levels(); ++h)
      for (int i = 0; i < u->level_size(h); ++i)
        if (i == u->fold_index(h) || sparse_set(oc, u->set(h, i))) items.push_back({h, i});
    auto expand = [&](const std::vector<char>& x) {
      std::vector<char> bits(u->total_size(), 0);
      for (std::size_t i = 0; i < items.size(); ++i)
        if (x[i]) bits[u->offset(items[i].first) + items[i].second] = 1;
      return bits;
    };
    auto project = [&](const std::vector<char>& bits) {
      std::vector<char> x(items.size(), 0);
      for (std::size_t i = 0; i < items.size(); ++i) x[i] = bits[u->offset(items[i].first) + items[i].second];
      return x;
    };
    next_closure(
        static_cast<int>(items.size()), [&](const std::vector<char>& x) { return project(closure(*u, expand(x))); },
        [&](const std::vector<char>& x) {
          bool sat = false;
          auto bits = closure(*u, expand(x), &sat);
          WeakIndexingSystem w(u, std::move(bits), Repr::Sparse, sat);
          if (!is_aeu(w)) return;
          if (out.size() >= cap) throw CapExceeded("too many weak indexing systems");
          out.push_back(std::move(w));
        });
    return out;
  }
  next_closure(
      u->total_size(), [&](const std::vector<char>& x) { return closure(*u, x); },
      [&](const std::vector<char>& x) {
        if (out.size() >= cap) throw CapExceeded("too many weak indexing systems");
        bool sat = false;
        closure(*u, x, &sat);
        out.emplace_back(u, x, Repr::Truncated, sat);
      });
  return out;
}

std::vector<HasseEdge> hasse(const std::vector<WeakIndexingSystem>& systems) {
  const int n = static_cast<int>(systems.size());
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq_truncated(systems[i], systems[j]) && !(systems[i] == systems[j])) below[j][i] = 1;
  std::vector<HasseEdge> edges;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!below[j][i]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k) cover = !(below[j][k] && below[k][i]);
      if (cover) edges.push_back({i, j});
    }
  return edges;
}

std::string describe(const WeakIndexingSystem& w) {
  std::ostringstream out;
  const OrbitCategory& oc = w.category();
  for (int h = 0; h < oc.num_levels(); ++h) {
    if (h) out << "; ";
    out << "L" << h << ":";
    bool first = true;
    for (const LevelSet& s : w.admissible(h)) {
      out << (first ? "" : ",") << "(";
      for (std::size_t t = 0; t < s.counts.size(); ++t) out << (t ? " " : "") << s.counts[t];
      out << ")";
      first = false;
    }
  }
  return out.str();
}

std::string hasse_dot(const std::vector<WeakIndexingSystem>& systems, const std::vector<HasseEdge>& edges) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const Families f = families(systems[i]);
    out << "  n" << i << " [label=\"" << i << " c" << f.colors.size() << " u" << f.units.size() << " f"
        << f.folds.size() << "\"];\n";
  }
  for (const auto& e : edges) out << "  n" << e.lower << " -> n" << e.upper << ";\n";
  out << "}\n";
  return out.str();
}

WeakIndexingSystem restrict_system(const WeakIndexingSystem& w, const SubgroupEmbedding& e) {
  if (e.ambient()->num_morphisms() != w.category().num_morphisms())
    throw InvalidArgument("embedding is into another group");
  auto u = std::make_shared<const SetUniverse>(e.sub(), w.bound());
  const OrbitCategory& sub = *e.sub();
  std::vector<char> bits(u->total_size(), 0);
  for (int k = 0; k < u->num_levels(); ++k)
    for (int i = 0; i < u->level_size(k); ++i)
      bits[u->offset(k) + i] = w.contains(iso_class(w.category(), e.set(realize(sub, u->set(k, i))))) ? 1 : 0;
  return WeakIndexingSystem(u, std::move(bits), w.repr());
}

}  // namespace eqv
