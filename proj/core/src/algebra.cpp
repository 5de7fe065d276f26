#include "eqv/algebra.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eqv/error.hpp"
#include "operad_detail.hpp"

namespace eqv {

namespace {

constexpr std::int64_t kTableCap = std::int64_t{1} << 24;

std::string name(const LevelSet& s) {
  std::ostringstream out;
  out << "level " << s.level << " [";
  for (std::size_t i = 0; i < s.counts.size(); ++i) out << (i ? " " : "") << s.counts[i];
  out << "]";
  return out.str();
}

std::string name(const Tuple& t) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
  out << ")";
  return out.str();
}

// Mixed radix, first entry most significant.
std::int64_t encode(const std::vector<int>& radix, const Tuple& t) {
  std::int64_t index = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) index = index * radix[i] + t[i];
  return index;
}

Tuple decode(const std::vector<int>& radix, std::int64_t index) {
  Tuple t(radix.size());
  for (int i = static_cast<int>(radix.size()) - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % radix[i]);
    index /= radix[i];
  }
  return t;
}

std::int64_t product(const std::vector<int>& radix) {
  std::int64_t n = 1;
  for (int r : radix) {
    if (r == 0) return 0;
    if (n > kTableCap / r) throw CapExceeded("tuple table too large");
    n *= r;
  }
  return n;
}

std::int64_t checked_count(const CoeffSystem& x, const RealizedSet& s) {
  const std::int64_t n = tuple_count(x, s);
  if (n > kTableCap) throw CapExceeded("tuple table too large");
  return n;
}

// Every index below count, or max uniform samples; true when sampled.
bool for_indices(std::int64_t count, std::size_t max, std::mt19937& rng,
                 const std::function<bool(std::int64_t)>& fn) {
  if (count <= static_cast<std::int64_t>(max)) {
    for (std::int64_t i = 0; i < count; ++i)
      if (!fn(i)) break;
    return false;
  }
  std::uniform_int_distribution<std::int64_t> pick(0, count - 1);
  for (std::size_t s = 0; s < max; ++s)
    if (!fn(pick(rng))) break;
  return true;
}

bool same_category(const OrbitCategory& a, const OrbitCategory& b) {
  return &a == &b || (a.group() == b.group() && a.num_morphisms() == b.num_morphisms());
}

const std::vector<int>& table(const StrictAlgebra& a, const LevelSet& s) {
  const auto it = a.mu.find(s);
  if (it == a.mu.end()) throw InvalidArgument("no structure map at inadmissible " + name(s));
  return it->second;
}

RealizedSet single(int level, const OrbitSpec& o) { return {level, {o}}; }

}  // namespace

// ---- indexed products ----

IndexedProduct indexed_product(const OrbitCategoryPtr& ocp, const std::vector<CoeffSystem>& xs, const RealizedSet& s) {
  const OrbitCategory& oc = *ocp;
  if (xs.size() != s.orbits.size()) throw InvalidArgument("one factor per orbit required");
  for (const auto& x : xs)
    if (!same_category(x.category(), oc)) throw InvalidArgument("factor over another group");
  IndexedProduct p;
  p.embedding = std::make_shared<const SubgroupEmbedding>(ocp, oc.rep(s.level));
  const SubgroupEmbedding& e = *p.embedding;
  const OrbitCategory& sub = *e.sub();
  const int top = sub.top();
  std::vector<std::vector<int>> radix(sub.num_levels());
  std::vector<int> sizes;
  for (int k = 0; k < sub.num_levels(); ++k) {
    if (k == top) {
      p.sets.push_back(s);
      p.projections.push_back(identity_map(s));
    } else {
      Restricted r = restrict_along(oc, s, e.morphism(sub.find_morphism(k, top, 0)));
      p.sets.push_back(std::move(r.set));
      p.projections.push_back(std::move(r.projection));
    }
    const RealizedSet& rk = p.sets.back();
    for (std::size_t j = 0; j < rk.orbits.size(); ++j)
      radix[k].push_back(xs[p.projections.back()[j].target].size(rk.orbits[j].cls));
    sizes.push_back(static_cast<int>(product(radix[k])));
  }
  std::vector<std::vector<int>> restriction(sub.num_morphisms());
  for (int m = 0; m < sub.num_morphisms(); ++m) {
    const int k2 = sub.morphism(m).src, k = sub.morphism(m).tgt;
    const RealizedSet& rk = p.sets[k];
    const Restricted r = restrict_along(oc, rk, e.morphism(m));
    const SetMap down = compose(oc, r.projection, p.projections[k], s);
    const auto alpha = detail::match_over(oc, r.set, down, p.sets[k2], p.projections[k2], s);
    if (!alpha) throw std::logic_error("restrictions of the indexing set do not match");
    auto& row = restriction[m];
    row.resize(sizes[k]);
    for (int v = 0; v < sizes[k]; ++v) {
      const Tuple t = decode(radix[k], v);
      Tuple out(p.sets[k2].orbits.size());
      for (std::size_t j = 0; j < r.set.orbits.size(); ++j) {
        const int src = r.projection[j].target;
        const CoeffSystem& x = xs[p.projections[k][src].target];
        const int pulled = x.restrict(orbit_morphism(oc, r.projection, r.set, rk, static_cast<int>(j)), t[src]);
        const int c = r.set.orbits[j].cls;
        const int back = oc.find_morphism(c, c, oc.group().inv((*alpha)[j].elt));
        out[(*alpha)[j].target] = x.restrict(back, pulled);
      }
      row[v] = static_cast<int>(encode(radix[k2], out));
    }
  }
  p.system = CoeffSystem(e.sub(), sizes, std::move(restriction));
  return p;
}

CoeffSystem restrict_coeff(const CoeffSystem& x, const SubgroupEmbedding& e) {
  const OrbitCategory& sub = *e.sub();
  std::vector<int> sizes;
  for (int k = 0; k < sub.num_levels(); ++k) sizes.push_back(x.size(e.level(k)));
  std::vector<std::vector<int>> res;
  for (int m = 0; m < sub.num_morphisms(); ++m) res.push_back(x.restriction()[e.morphism(m)]);
  std::optional<MonoidData> monoid;
  if (x.has_monoid()) {
    MonoidData d;
    for (int k = 0; k < sub.num_levels(); ++k) {
      d.add.push_back(x.monoid().add[e.level(k)]);
      d.zero.push_back(x.zero(e.level(k)));
    }
    monoid = std::move(d);
  }
  return CoeffSystem(e.sub(), std::move(sizes), std::move(res), std::move(monoid));
}

CoeffMap indexed_diagonal(const CoeffSystem& x, const IndexedProduct& p) {
  const SubgroupEmbedding& e = *p.embedding;
  const OrbitCategory& oc = x.category();
  CoeffMap f(p.sets.size());
  for (std::size_t k = 0; k < p.sets.size(); ++k) {
    const RealizedSet& rk = p.sets[k];
    const int l = e.level(static_cast<int>(k));
    std::vector<int> radix;
    for (const auto& o : rk.orbits) radix.push_back(x.size(o.cls));
    for (int v = 0; v < x.size(l); ++v) {
      Tuple t;
      for (const auto& o : rk.orbits) t.push_back(x.restrict(oc.find_morphism(o.cls, l, o.elt), v));
      f[k].push_back(static_cast<int>(encode(radix, t)));
    }
  }
  return f;
}

// ---- strict algebras ----

int apply(const StrictAlgebra& a, const RealizedSet& s, const Tuple& t) {
  const OrbitCategory& oc = a.x.category();
  const Canonical c = canonicalize(oc, s);
  const Tuple tc = push_tuple(a.x, c.to_canonical, s, c.set, t);
  return table(a, c.iso)[encode_tuple(a.x, c.set, tc)];
}

int apply(const StrictAlgebra& a, const LevelSet& s, const Tuple& t) {
  return table(a, s)[encode_tuple(a.x, realize(a.x.category(), s), t)];
}

AlgebraReport validate_strict_algebra(const StrictAlgebra& a, const AlgebraOptions& opt) {
  AlgebraReport r;
  std::mt19937 rng(opt.seed);
  auto fail = [&](const std::string& msg) {
    if (r.violations.size() < opt.max_violations) r.violations.push_back(msg);
    return r.violations.size() < opt.max_violations;
  };
  const CoeffSystem& x = a.x;
  const OrbitCategory& oc = x.category();
  if (!same_category(oc, a.i.category())) {
    fail("system and indexing system over different groups");
    return r;
  }
  if (const std::string v = x.violation(); !v.empty()) {
    fail("coefficient system: " + v);
    return r;
  }
  if (const auto v = validate(a.i); !v.empty()) {
    fail("indexing system: " + v.front().message);
    return r;
  }
  const SetUniverse& u = a.i.universe();
  std::vector<std::vector<LevelSet>> adm(oc.num_levels());
  for (int h = 0; h < oc.num_levels(); ++h) {
    adm[h] = a.i.admissible(h);
    for (int idx = 0; idx < u.level_size(h); ++idx) {
      const LevelSet& s = u.set(h, idx);
      const bool in = a.i.contains_index(h, idx);
      const auto it = a.mu.find(s);
      if (!in) {
        if (it != a.mu.end()) fail("structure map given at inadmissible " + name(s));
        continue;
      }
      if (it == a.mu.end()) {
        fail("missing structure map at " + name(s));
        continue;
      }
      const std::int64_t n = checked_count(x, realize(oc, s));
      if (static_cast<std::int64_t>(it->second.size()) != n) {
        fail("structure map at " + name(s) + " has the wrong number of entries");
        continue;
      }
      for (int v : it->second)
        if (v < 0 || v >= x.size(h)) {
          fail("structure map at " + name(s) + " leaves X at level " + std::to_string(h));
          break;
        }
    }
  }
  for (const auto& [s, tab] : a.mu)
    if (s.level < 0 || s.level >= oc.num_levels() || u.index_of(s) < 0) fail("structure map beyond the bound");
  if (!r.ok()) return r;

  for (int h = 0; h < oc.num_levels(); ++h) {
    const LevelSet pt = point(oc, h);
    if (!a.i.contains(pt)) continue;
    const auto& tab = table(a, pt);
    for (int v = 0; v < x.size(h); ++v, ++r.checked)
      if (tab[v] != v && !fail("identity: structure map at " + name(pt) + " moves " + std::to_string(v))) return r;
  }

  for (int h = 0; h < oc.num_levels(); ++h)
    for (const LevelSet& s : adm[h]) {
      const RealizedSet sr = realize(oc, s);
      const auto& tab = table(a, s);
      const std::int64_t n = static_cast<std::int64_t>(tab.size());
      const auto autos = automorphisms(oc, sr);
      for (const SetMap& sigma : autos) {
        if (sigma == identity_map(sr)) continue;
        bool go = true;
        r.sampled += for_indices(n, opt.max_tuples, rng, [&](std::int64_t idx) {
          const Tuple t = decode_tuple(x, sr, idx);
          const Tuple st = pullback_tuple(x, sigma, sr, sr, t);
          ++r.checked;
          if (tab[encode_tuple(x, sr, st)] != tab[idx])
            go = fail("invariance: automorphism changes the structure map at " + name(s) + " on " + name(t));
          return go;
        });
        if (!go) return r;
      }
      for (int m : oc.morphisms_into(h)) {
        if (m == oc.identity(h)) continue;
        const Restricted rs = restrict_along(oc, sr, m);
        bool go = true;
        r.sampled += for_indices(n, opt.max_tuples, rng, [&](std::int64_t idx) {
          const Tuple t = decode_tuple(x, sr, idx);
          const Tuple rt = pullback_tuple(x, rs.projection, rs.set, sr, t);
          ++r.checked;
          int lhs = -1;
          try {
            lhs = apply(a, rs.set, rt);
          } catch (const InvalidArgument& err) {
            go = fail(std::string("restriction: ") + err.what());
            return false;
          }
          if (lhs != x.restrict(m, tab[idx]))
            go = fail("restriction: structure map at " + name(s) + " not stable along morphism " + std::to_string(m) +
                      " on " + name(t));
          return go;
        });
        if (!go) return r;
      }
    }

  // Commutativity square over every in-bound choice of admissible T_U.
  for (int h = 0; h < oc.num_levels(); ++h)
    for (const LevelSet& s : adm[h]) {
      const RealizedSet sr = realize(oc, s);
      const int n = static_cast<int>(sr.orbits.size());
      if (s == point(oc, h)) continue;
      const auto& tab = table(a, s);
      std::vector<LevelSet> parts(n);
      bool go = true;
      std::function<void(int, int)> rec = [&](int i, int budget) {
        if (!go) return;
        if (i == n) {
          std::vector<RealizedSet> pr;
          for (const auto& p : parts) pr.push_back(realize(oc, p));
          const Coproduct cp = indexed_coproduct(oc, sr, pr);
          const std::int64_t count = checked_count(x, cp.set);
          r.sampled += for_indices(count, opt.max_tuples, rng, [&](std::int64_t idx) {
            const Tuple t = decode_tuple(x, cp.set, idx);
            Tuple inner(n);
            for (int j = 0; j < n; ++j) {
              const Tuple slice(t.begin() + cp.offsets[j], t.begin() + cp.offsets[j] + pr[j].orbits.size());
              inner[j] = apply(a, parts[j], slice);
            }
            ++r.checked;
            const int lhs = apply(a, cp.set, t);
            const int rhs = tab[encode_tuple(x, sr, inner)];
            if (lhs != rhs) {
              std::string msg = "commutativity fails at S = " + name(s) + " with T = (";
              for (int j = 0; j < n; ++j) msg += (j ? ", " : "") + name(parts[j]);
              go = fail(msg + ") on " + name(t));
            }
            return go;
          });
          return;
        }
        const int c = sr.orbits[i].cls;
        const int mult = oc.level_order(h) / oc.level_order(c);
        for (const LevelSet& t : adm[c]) {
          const int card = mult * cardinality(oc, t);
          if (card > budget) continue;
          parts[i] = t;
          rec(i + 1, budget - card);
        }
      };
      rec(0, a.i.bound());
      if (!go) return r;
    }

  // Unitality: feeding mu_empty into one orbit drops that orbit.
  for (int h = 0; h < oc.num_levels(); ++h)
    for (const LevelSet& s : adm[h]) {
      const RealizedSet sr = realize(oc, s);
      const auto& tab = table(a, s);
      for (std::size_t i = 0; i < sr.orbits.size(); ++i) {
        const int c = sr.orbits[i].cls;
        const LevelSet none = empty_set(oc, c);
        if (!a.i.contains(none)) continue;
        const int unit = table(a, none)[0];
        RealizedSet rest = sr;
        rest.orbits.erase(rest.orbits.begin() + static_cast<long>(i));
        bool go = true;
        r.sampled += for_indices(checked_count(x, rest), opt.max_tuples, rng, [&](std::int64_t idx) {
          Tuple t = decode_tuple(x, rest, idx);
          const int lhs = apply(a, rest, t);
          t.insert(t.begin() + static_cast<long>(i), unit);
          ++r.checked;
          if (tab[encode_tuple(x, sr, t)] != lhs)
            go = fail("unitality fails at " + name(s) + " on orbit " + std::to_string(i));
          return go;
        });
        if (!go) return r;
      }
    }
  return r;
}

StrictAlgebra restrict_algebra(const StrictAlgebra& a, const WeakIndexingSystem& smaller) {
  StrictAlgebra r{a.x, smaller, {}};
  const SetUniverse& u = smaller.universe();
  for (int h = 0; h < u.num_levels(); ++h)
    for (const LevelSet& s : smaller.admissible(h)) {
      const auto it = a.mu.find(s);
      if (it == a.mu.end()) throw InvalidArgument("system is not contained in the algebra's: " + name(s));
      r.mu.emplace(s, it->second);
    }
  return r;
}

bool same_algebra(const StrictAlgebra& a, const StrictAlgebra& b) {
  return a.x.sizes() == b.x.sizes() && a.x.restriction() == b.x.restriction() && a.i == b.i && a.mu == b.mu;
}

StrictAlgebra terminal_algebra(const WeakIndexingSystem& i) {
  StrictAlgebra a{terminal_system(i.universe().category_ptr()), i, {}};
  for (int h = 0; h < i.universe().num_levels(); ++h)
    for (const LevelSet& s : i.admissible(h)) a.mu.emplace(s, std::vector<int>{0});
  return a;
}

namespace {

bool intertwines_here(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b, const LevelSet& s) {
  const OrbitCategory& oc = a.x.category();
  const RealizedSet sr = realize(oc, s);
  const auto& ta = table(a, s);
  const auto& tb = table(b, s);
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(ta.size()); ++idx) {
    Tuple t = decode_tuple(a.x, sr, idx);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = f[sr.orbits[i].cls][t[i]];
    if (f[s.level][ta[idx]] != tb[encode_tuple(b.x, sr, t)]) return false;
  }
  return true;
}

}  // namespace

bool intertwines(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b, const LevelSet& s) {
  // mu_S is a map of coefficient systems below the level of S.
  if (!intertwines_here(f, a, b, s)) return false;
  const SetUniverse& u = a.i.universe();
  const OrbitCategory& oc = u.category();
  const int idx = u.index_of(s);
  if (idx < 0) throw CapExceeded("set beyond the bound: " + name(s));
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    if (mor.tgt != s.level || m == oc.identity(s.level)) continue;
    if (!intertwines_here(f, a, b, u.set(mor.src, u.restrict(m, idx)))) return false;
  }
  return true;
}

namespace {

void check_morphism_input(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b) {
  if (!same_category(a.x.category(), b.x.category())) throw InvalidArgument("algebras over different groups");
  if (!(a.i == b.i)) throw InvalidArgument("algebras over different indexing systems");
  if (!is_coeff_map(a.x, b.x, f)) throw InvalidArgument("not a map of coefficient systems");
}

}  // namespace

WeakIndexingSystem intertwining_locus(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b) {
  check_morphism_input(f, a, b);
  const SetUniverse& u = a.i.universe();
  std::vector<char> bits(u.total_size(), 0);
  for (int h = 0; h < u.num_levels(); ++h)
    for (int idx = 0; idx < u.level_size(h); ++idx)
      if (a.i.contains_index(h, idx) && intertwines(f, a, b, u.set(h, idx))) bits[u.offset(h) + idx] = 1;
  return WeakIndexingSystem(a.i.universe_ptr(), std::move(bits));
}

MorphismResult algebra_morphism(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b,
                                MorphismCheck mode) {
  check_morphism_input(f, a, b);
  const OrbitCategory& oc = a.x.category();
  const WeakIndexingSystem& w = a.i;
  MorphismResult r;
  std::vector<LevelSet> family;
  if (mode == MorphismCheck::Fast && is_indexing_system(w)) {
    r.fast = true;
    for (int h = 0; h < oc.num_levels(); ++h)
      for (const LevelSet& s : w.admissible(h))
        if (num_orbits(s) == 0 || is_transitive(s) || s == point(oc, h, 2)) family.push_back(s);
  } else if (mode == MorphismCheck::Fast && is_aeu(w)) {
    try {
      const auto gens = w.sparse_generators();
      for (int h = 0; h < oc.num_levels(); ++h) {
        if (w.contains(empty_set(oc, h))) family.push_back(empty_set(oc, h));
        for (const LevelSet& s : gens[h])
          if (std::find(family.begin(), family.end(), s) == family.end()) family.push_back(s);
      }
      r.fast = true;
    } catch (const CapExceeded&) {
      family.clear();
    }
  }
  if (!r.fast)
    for (int h = 0; h < oc.num_levels(); ++h)
      for (const LevelSet& s : w.admissible(h)) family.push_back(s);
  r.morphism = true;
  for (const LevelSet& s : family) {
    r.checked.push_back(s);
    if (!intertwines(f, a, b, s)) {
      r.morphism = false;
      r.failure = s;
      break;
    }
  }
  return r;
}

bool is_algebra_morphism(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b, MorphismCheck mode) {
  return algebra_morphism(f, a, b, mode).morphism;
}

// ---- norms ----

namespace {

void require_indexing(const WeakIndexingSystem& w) {
  if (!is_indexing_system(w)) throw InvalidArgument("an indexing system is required");
}

// Norm of one orbit of a set at level h, through its canonical orbit type.
int norm_of(const ChanData& c, int h, const OrbitSpec& o, int v) {
  const OrbitCategory& oc = c.x.category();
  const RealizedSet one = single(h, o);
  const Canonical can = canonicalize(oc, one);
  const int w = push_tuple(c.x, can.to_canonical, one, can.set, {v})[0];
  const int t = oc.type_of(h, can.set.orbits[0].cls, can.set.orbits[0].elt);
  if (t == oc.point_type(h)) return w;
  const auto it = c.norms.find({h, t});
  if (it == c.norms.end()) throw InvalidArgument("no norm along " + name(can.iso));
  return it->second[w];
}

}  // namespace

StrictAlgebra chan_to_strict(const ChanData& c) {
  require_indexing(c.i);
  if (!c.x.has_monoid()) throw InvalidArgument("norm data needs a monoid-valued system");
  const OrbitCategory& oc = c.x.category();
  StrictAlgebra a{c.x, c.i, {}};
  for (int h = 0; h < oc.num_levels(); ++h)
    for (const LevelSet& s : c.i.admissible(h)) {
      const RealizedSet sr = realize(oc, s);
      const std::int64_t n = checked_count(c.x, sr);
      std::vector<int> tab(n);
      for (std::int64_t idx = 0; idx < n; ++idx) {
        const Tuple t = decode_tuple(c.x, sr, idx);
        int acc = c.x.zero(h);
        for (std::size_t i = 0; i < t.size(); ++i) acc = c.x.add(h, acc, norm_of(c, h, sr.orbits[i], t[i]));
        tab[idx] = acc;
      }
      a.mu.emplace(s, std::move(tab));
    }
  return a;
}

ChanData strict_to_chan(const StrictAlgebra& a) {
  require_indexing(a.i);
  const OrbitCategory& oc = a.x.category();
  MonoidData m;
  ChanData c;
  for (int h = 0; h < oc.num_levels(); ++h) {
    const int n = a.x.size(h);
    const LevelSet two = point(oc, h, 2), none = empty_set(oc, h);
    if (!a.i.contains(two) || !a.i.contains(none)) throw InvalidArgument("sum and zero need 2 * pt and the empty set");
    const auto& add = table(a, two);
    m.add.emplace_back(n, std::vector<int>(n));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) m.add.back()[p][q] = add[static_cast<std::size_t>(p) * n + q];
    m.zero.push_back(table(a, none)[0]);
    for (int t = 0; t < oc.num_types(h); ++t) {
      if (t == oc.point_type(h)) continue;
      LevelSet s = empty_set(oc, h);
      s.counts[t] = 1;
      if (cardinality(oc, s) > a.i.bound() || !a.i.contains(s)) continue;
      c.norms.emplace(std::make_pair(h, t), table(a, s));
    }
  }
  c.x = CoeffSystem(a.x.category_ptr(), a.x.sizes(), a.x.restriction(), std::move(m));
  c.i = a.i;
  return c;
}

std::vector<std::string> validate_chan(const ChanData& c, const AlgebraOptions& opt) {
  std::vector<std::string> out;
  if (!c.x.has_monoid()) return {"norm data needs a monoid-valued system"};
  if (const std::string v = c.x.violation(); !v.empty()) return {"coefficient system: " + v};
  if (!is_indexing_system(c.i)) return {"not an indexing system"};
  const OrbitCategory& oc = c.x.category();
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    const int k = mor.src, h = mor.tgt;
    if (c.x.restrict(m, c.x.zero(h)) != c.x.zero(k)) out.push_back("restriction " + std::to_string(m) + " moves zero");
    for (int p = 0; p < c.x.size(h) && out.empty(); ++p)
      for (int q = 0; q < c.x.size(h); ++q)
        if (c.x.restrict(m, c.x.add(h, p, q)) != c.x.add(k, c.x.restrict(m, p), c.x.restrict(m, q))) {
          out.push_back("restriction " + std::to_string(m) + " is not additive");
          break;
        }
  }
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int t = 0; t < oc.num_types(h); ++t) {
      if (t == oc.point_type(h)) continue;
      LevelSet s = empty_set(oc, h);
      s.counts[t] = 1;
      const bool wanted = cardinality(oc, s) <= c.i.bound() && c.i.contains(s);
      const auto it = c.norms.find({h, t});
      if (wanted != (it != c.norms.end())) {
        out.push_back((wanted ? "missing norm along " : "norm along inadmissible ") + name(s));
        continue;
      }
      if (!wanted) continue;
      const int k = oc.type(h, t).cls;
      const auto& nm = it->second;
      if (static_cast<int>(nm.size()) != c.x.size(k)) {
        out.push_back("norm along " + name(s) + " has the wrong number of entries");
        continue;
      }
      if (std::any_of(nm.begin(), nm.end(), [&](int v) { return v < 0 || v >= c.x.size(h); })) {
        out.push_back("norm along " + name(s) + " leaves X");
        continue;
      }
      if (nm[c.x.zero(k)] != c.x.zero(h)) out.push_back("norm along " + name(s) + " does not preserve zero");
      for (int p = 0; p < c.x.size(k); ++p)
        for (int q = 0; q < c.x.size(k); ++q)
          if (nm[c.x.add(k, p, q)] != c.x.add(h, nm[p], nm[q])) {
            out.push_back("norm along " + name(s) + " is not additive");
            p = c.x.size(k);
            break;
          }
    }
  for (const auto& [key, nm] : c.norms)
    if (key.first < 0 || key.first >= oc.num_levels() || key.second < 0 || key.second >= oc.num_types(key.first))
      out.push_back("norm keyed by an unknown orbit type");
  if (!out.empty()) return out;
  for (const std::string& v : validate_strict_algebra(chan_to_strict(c), opt).violations) out.push_back(v);
  return out;
}

SemiMackey strict_to_mackey(const StrictAlgebra& a) {
  const OrbitCategory& oc = a.x.category();
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int t = 0; t < oc.num_types(h); ++t) {
      LevelSet s = empty_set(oc, h);
      s.counts[t] = 1;
      if (cardinality(oc, s) > a.i.bound() || !a.i.contains(s))
        throw InvalidArgument("transfers need every transitive set admissible; missing " + name(s));
    }
  if (const AlgebraReport r = validate_strict_algebra(a); !r.ok())
    throw InvalidArgument("invalid algebra: " + r.violations.front());
  const ChanData c = strict_to_chan(a);
  std::vector<std::vector<int>> transfer(oc.num_morphisms());
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    const RealizedSet one = single(mor.tgt, {mor.src, mor.elt});
    for (int v = 0; v < a.x.size(mor.src); ++v) transfer[m].push_back(apply(a, one, {v}));
  }
  return SemiMackey(c.x, std::move(transfer));
}

// ---- free algebras ----

namespace {

FreeElement normalize_in(const DiscreteOperad& o, const CoeffSystem& x, int p, int op, const Tuple& t) {
  const ProfileSpace& sp = o.space();
  const RealizedSet& cs = sp.canonical_set(p);
  const auto& autos = sp.automorphisms(p);
  FreeElement best{p, op, t};
  for (std::size_t s = 0; s < autos.size(); ++s) {
    if (sp.act(p, static_cast<int>(s)) != p) throw InvalidArgument("free algebras need a one-color operad");
    FreeElement e{p, o.rho(p, static_cast<int>(s), op), pullback_tuple(x, autos[s], cs, cs, t)};
    if (e < best) best = std::move(e);
  }
  return best;
}

}  // namespace

FreeAlgebra::FreeAlgebra(OperadPtr o, CoeffSystem x, std::size_t cap) : o_(std::move(o)), x_(std::move(x)) {
  const ProfileSpace& sp = o_->space();
  const OrbitCategory& oc = sp.category();
  if (!same_category(oc, x_.category())) throw InvalidArgument("operad and system over different groups");
  for (int h = 0; h < oc.num_levels(); ++h)
    if (sp.colors().size(h) > 1) throw InvalidArgument("free algebras need a one-color operad");
  elements_.resize(oc.num_levels());
  index_.resize(oc.num_levels());
  std::size_t work = 0;
  for (int h = 0; h < oc.num_levels(); ++h) {
    for (int p : sp.profiles_at(h)) {
      const int ops = o_->size(p);
      const RealizedSet& cs = sp.canonical_set(p);
      const std::int64_t n = tuple_count(x_, cs);
      if (ops == 0 || n == 0) continue;
      const std::size_t cost = static_cast<std::size_t>(ops) * static_cast<std::size_t>(std::min<std::int64_t>(n, kTableCap));
      if (n > kTableCap || (work += cost) > cap) throw CapExceeded("free algebra too large");
      // Sweep the Aut orbits of (op, tuple), keeping the least of each.
      const auto& autos = sp.automorphisms(p);
      std::vector<char> seen(cost, 0);
      for (int op = 0; op < ops; ++op)
        for (std::int64_t idx = 0; idx < n; ++idx) {
          if (seen[static_cast<std::size_t>(op) * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx)]) continue;
          const Tuple t = decode_tuple(x_, cs, idx);
          FreeElement best{p, op, t};
          for (std::size_t a = 0; a < autos.size(); ++a) {
            if (sp.act(p, static_cast<int>(a)) != p) throw InvalidArgument("free algebras need a one-color operad");
            FreeElement e{p, o_->rho(p, static_cast<int>(a), op), pullback_tuple(x_, autos[a], cs, cs, t)};
            seen[static_cast<std::size_t>(e.op) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(encode_tuple(x_, cs, e.tuple))] = 1;
            if (e < best) best = std::move(e);
          }
          elements_[h].push_back(std::move(best));
        }
    }
    std::sort(elements_[h].begin(), elements_[h].end());
    for (std::size_t i = 0; i < elements_[h].size(); ++i) index_[h].emplace(elements_[h][i], static_cast<int>(i));
  }
  std::vector<int> sizes;
  for (const auto& e : elements_) sizes.push_back(static_cast<int>(e.size()));
  std::vector<std::vector<int>> res(oc.num_morphisms());
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const int h = oc.morphism(m).tgt, k = oc.morphism(m).src;
    for (const FreeElement& e : elements_[h]) {
      SetMap proj;
      const Framed fr = sp.restricted(m, e.profile, &proj);
      const Located l = sp.locate(fr);
      const Tuple t = pullback_tuple(x_, proj, fr.set, sp.canonical_set(e.profile), e.tuple);
      const int i = index(k, from_frame(l, o_->res(m, e.profile, e.op), fr.set, t));
      if (i < 0) throw std::logic_error("restriction leaves the free algebra");
      res[m].push_back(i);
    }
  }
  system_ = CoeffSystem(x_.category_ptr(), std::move(sizes), std::move(res));
}

int FreeAlgebra::index(int level, const FreeElement& e) const {
  const auto it = index_[level].find(e);
  return it == index_[level].end() ? -1 : it->second;
}

FreeElement FreeAlgebra::normalize(int profile, int op, const Tuple& t) const {
  return normalize_in(*o_, x_, profile, op, t);
}

FreeElement FreeAlgebra::from_frame(const Located& l, int op, const RealizedSet& frame, const Tuple& t) const {
  const RealizedSet& cs = o_->space().canonical_set(l.profile);
  return normalize(l.profile, op, push_tuple(x_, l.to_canonical, frame, cs, t));
}

int FreeAlgebra::unit(int level, int x) const {
  const ProfileSpace& sp = o_->space();
  if (sp.colors().size(level) == 0) return -1;
  const int p = sp.point_profile(level, 0);
  return index(level, normalize(p, o_->identity(level, 0), {x}));
}

int FreeAlgebra::arity(int level, int i) const {
  const ProfileSpace& sp = o_->space();
  return cardinality(sp.category(), sp.profile(elements_[level][i].profile).set);
}

CoeffSystem free_algebra(const OperadPtr& o, const CoeffSystem& x) { return FreeAlgebra(o, x).system(); }

namespace {

// mu: the entries of w index elements of t; -1 when the composite is beyond the bound.
int multiply(const FreeAlgebra& t, int level, const FreeElement& w) {
  const DiscreteOperad& o = t.operad();
  const ProfileSpace& sp = o.space();
  const RealizedSet& cs = sp.canonical_set(w.profile);
  std::vector<int> qs, ops;
  Tuple flat;
  for (std::size_t i = 0; i < cs.orbits.size(); ++i) {
    const FreeElement& inner = t.element(cs.orbits[i].cls, w.tuple[i]);
    qs.push_back(inner.profile);
    ops.push_back(inner.op);
    flat.insert(flat.end(), inner.tuple.begin(), inner.tuple.end());
  }
  if (sp.gamma_target(w.profile, qs) < 0) return -1;
  const Framed f = sp.composite(w.profile, qs);
  const Located l = sp.locate(f);
  const int i = t.index(level, t.from_frame(l, o.gamma(w.profile, w.op, qs, ops), f.set, flat));
  if (i < 0) throw std::logic_error("composite missing from the free algebra");
  return i;
}

}  // namespace

MonadReport verify_monad_laws(const OperadPtr& o, const CoeffSystem& x, const MonadOptions& opt) {
  MonadReport r;
  const FreeAlgebra t(o, x);
  const FreeAlgebra tt(o, t.system());
  const ProfileSpace& sp = o->space();
  const OrbitCategory& oc = sp.category();
  auto fail = [&](const std::string& msg) {
    if (r.violations.size() < 20) r.violations.push_back(msg);
  };
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int i = 0; i < t.system().size(h); ++i) {
      const int e = tt.unit(h, i);
      ++r.checked;
      if (e < 0 || multiply(t, h, tt.element(h, e)) != i)
        fail("left unit law fails at level " + std::to_string(h) + " on element " + std::to_string(i));
      const FreeElement& w = t.element(h, i);
      const RealizedSet& cs = sp.canonical_set(w.profile);
      Tuple units;
      for (std::size_t j = 0; j < cs.orbits.size(); ++j) units.push_back(t.unit(cs.orbits[j].cls, w.tuple[j]));
      ++r.checked;
      if (multiply(t, h, tt.normalize(w.profile, w.op, units)) != i)
        fail("right unit law fails at level " + std::to_string(h) + " on element " + std::to_string(i));
    }

  // Innermost and middle arity of the elements of T T X; an instance is in
  // bound when both totals over the outer operation are.
  std::vector<std::vector<int>> inner_total(oc.num_levels()), middle(oc.num_levels());
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int i = 0; i < tt.system().size(h); ++i) {
      const FreeElement& w = tt.element(h, i);
      const RealizedSet& cs = sp.canonical_set(w.profile);
      int sum = 0;
      for (std::size_t j = 0; j < cs.orbits.size(); ++j) {
        const int c = cs.orbits[j].cls;
        sum += oc.level_order(h) / oc.level_order(c) * t.arity(c, w.tuple[j]);
      }
      inner_total[h].push_back(sum);
      middle[h].push_back(tt.arity(h, i));
    }
  std::mt19937 rng(opt.seed);
  for (int h = 0; h < oc.num_levels(); ++h) {
    std::vector<int> outer;
    for (int p : sp.profiles_at(h))
      if (o->size(p) > 0) outer.push_back(p);
    if (outer.empty()) continue;
    for (std::size_t s = 0; s < opt.samples; ++s) {
      std::optional<FreeElement> w;
      for (int attempt = 0; attempt < 100 && !w; ++attempt) {
        const int p = outer[std::uniform_int_distribution<std::size_t>(0, outer.size() - 1)(rng)];
        const RealizedSet& cs = sp.canonical_set(p);
        FreeElement cand{p, std::uniform_int_distribution<int>(0, o->size(p) - 1)(rng), {}};
        int inner_budget = sp.bound(), middle_budget = sp.bound();
        bool ok = true;
        std::vector<int> fits;
        for (std::size_t j = 0; j < cs.orbits.size() && ok; ++j) {
          const int c = cs.orbits[j].cls;
          const int mult = oc.level_order(h) / oc.level_order(c);
          fits.clear();
          for (int i = 0; i < tt.system().size(c); ++i)
            if (mult * inner_total[c][i] <= inner_budget && mult * middle[c][i] <= middle_budget) fits.push_back(i);
          if (fits.empty()) {
            ok = false;
            break;
          }
          const int pick = fits[std::uniform_int_distribution<std::size_t>(0, fits.size() - 1)(rng)];
          cand.tuple.push_back(pick);
          inner_budget -= mult * inner_total[c][pick];
          middle_budget -= mult * middle[c][pick];
        }
        if (ok) w = std::move(cand);
      }
      if (!w) continue;
      const RealizedSet& cs = sp.canonical_set(w->profile);
      Tuple inner;
      bool clipped = false;
      for (std::size_t j = 0; j < cs.orbits.size() && !clipped; ++j) {
        const int c = cs.orbits[j].cls;
        const int v = multiply(t, c, tt.element(c, w->tuple[j]));
        clipped = v < 0;
        inner.push_back(v);
      }
      const int left = clipped ? -1 : multiply(t, h, tt.normalize(w->profile, w->op, inner));
      const int mid = multiply(tt, h, *w);
      const int right = mid < 0 ? -1 : multiply(t, h, tt.element(h, mid));
      if (left < 0 || right < 0) {
        ++r.clipped;
        continue;
      }
      ++r.checked;
      if (left != right) fail("associativity fails at level " + std::to_string(h) + " on " + name(w->tuple));
    }
  }
  return r;
}

SplittingReport splitting_check(const DiscreteOperad& o, const LevelSet& s, std::int64_t count_limit) {
  const ProfileSpace& sp = o.space();
  const OrbitCategory& oc = sp.category();
  const Group& G = oc.group();
  const RealizedSet sr = realize(oc, s);
  const int p = sp.find({s.level, s, std::vector<int>(sr.orbits.size(), 0), 0});
  if (p < 0) throw InvalidArgument("arity beyond the operad's profiles: " + name(s));
  // The G-set of S: points (orbit, coset rep), and X = its fixed-point system.
  std::vector<int> offset;
  int n = 0;
  for (const auto& orb : sr.orbits) {
    offset.push_back(n);
    n += static_cast<int>(oc.coset_reps(orb.cls).size());
  }
  auto point_of = [&](int orbit, int g) {
    const auto& reps = oc.coset_reps(sr.orbits[orbit].cls);
    const int c = oc.coset(sr.orbits[orbit].cls, g);
    return offset[orbit] + static_cast<int>(std::find(reps.begin(), reps.end(), c) - reps.begin());
  };
  std::vector<std::vector<int>> act(G.order(), std::vector<int>(n));
  for (int g = 0; g < G.order(); ++g)
    for (std::size_t i = 0; i < sr.orbits.size(); ++i)
      for (int c : oc.coset_reps(sr.orbits[i].cls)) act[g][point_of(static_cast<int>(i), c)] = point_of(static_cast<int>(i), G.mul(g, c));
  const GSet y(oc.group_ptr(), whole_group(G), n, act);
  const CoeffSystem x = fixed_point_system(sp.category_ptr(), y);
  std::vector<std::vector<int>> fixed(oc.num_levels());
  for (int l = 0; l < oc.num_levels(); ++l) fixed[l] = y.fixed_points(oc.rep(l));
  SplittingReport r;
  r.operations = o.size(p);
  std::set<FreeElement> summand;
  for (const SetMap& sigma : sp.automorphisms(p)) {
    Tuple t;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const int q = point_of(sigma[i].target, sigma[i].elt);
      const auto& f = fixed[sr.orbits[i].cls];
      t.push_back(static_cast<int>(std::lower_bound(f.begin(), f.end(), q) - f.begin()));
    }
    for (int op = 0; op < r.operations; ++op) summand.insert(normalize_in(o, x, p, op, t));
  }
  r.summand = static_cast<int>(summand.size());
  const std::int64_t tuples = tuple_count(x, sr);
  if (tuples <= count_limit / std::max(1, r.operations)) {
    std::int64_t classes = 0;
    for (int op = 0; op < r.operations; ++op)
      for (std::int64_t idx = 0; idx < tuples; ++idx) {
        const Tuple t = decode_tuple(x, sr, idx);
        classes += normalize_in(o, x, p, op, t) == FreeElement{p, op, t};
      }
    r.rest = classes - r.summand;
  }
  return r;
}

int global_sections(const CoeffSystem& x) { return x.size(x.category().top()); }

CoeffSystem inflate(OrbitCategoryPtr oc, int n) { return constant_system(std::move(oc), n); }

}  // namespace eqv
