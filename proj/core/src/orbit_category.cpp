#include "eqv/orbit_category.hpp"

#include <algorithm>
#include <numeric>

#include "eqv/error.hpp"

namespace eqv {

OrbitCategory::OrbitCategory(std::shared_ptr<const Group> g)
    : group_(std::move(g)), lattice_(group_) {
  const Group& G = *group_;
  const int n = G.order();
  const int m = lattice_.num_classes();

  coset_.assign(m, std::vector<int>(n));
  coset_reps_.resize(m);
  normalizer_.resize(m);
  local_.reserve(m);
  for (int c = 0; c < m; ++c) {
    const Subgroup& r = rep(c);
    for (int a = 0; a < n; ++a) {
      int best = n;
      for (int x : r.elements) best = std::min(best, G.mul(a, x));
      coset_[c][a] = best;
    }
    std::vector<int> reps = coset_[c];
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    coset_reps_[c] = reps;
    normalizer_[c] = eqv::normalizer(G, r, whole_group(G)).elements;
    local_.emplace_back(group_, r);
  }

  morph_lookup_.assign(static_cast<std::size_t>(m) * m * n, -1);
  between_.assign(static_cast<std::size_t>(m) * m, {});
  into_.assign(m, {});
  for (int k = 0; k < m; ++k) {
    for (int h = 0; h < m; ++h) {
      for (int b : coset_reps_[h]) {
        if (!rep(h).includes(conjugate_subgroup(G, rep(k), G.inv(b)))) continue;
        const int id = static_cast<int>(morphisms_.size());
        morphisms_.push_back({k, h, b});
        between_[k * m + h].push_back(id);
        into_[h].push_back(id);
      }
      for (int a = 0; a < n; ++a) {
        const int b = coset_[h][a];
        const auto& ids = between_[k * m + h];
        for (int id : ids)
          if (morphisms_[id].elt == b) morph_lookup_[(static_cast<std::size_t>(k) * m + h) * n + a] = id;
      }
    }
  }

  types_.resize(m);
  type_lookup_.assign(m, std::vector<int>(static_cast<std::size_t>(m) * n, -1));
  type_w_.assign(m, std::vector<int>(static_cast<std::size_t>(m) * n, -1));
  type_stab_.resize(m);
  for (int h = 0; h < m; ++h) {
    const SubgroupLattice& loc = local_[h];
    std::vector<std::pair<int, int>> by_local(loc.num_classes(), {-1, -1});
    std::vector<int> canon_of(static_cast<std::size_t>(m) * n, -1);
    for (int k = 0; k < m; ++k) {
      for (int id : between_[k * m + h]) {
        const int b = morphisms_[id].elt;
        int best = n, best_w = -1;
        for (int w : normalizer_[k]) {
          const int c = coset_[h][G.mul(w, b)];
          if (c < best) best = c, best_w = w;
        }
        canon_of[k * n + b] = best;
        for (int a = 0; a < n; ++a)
          if (coset_[h][a] == b) type_w_[h][k * n + a] = best_w;
        const int lc = loc.class_of(conjugate_subgroup(G, rep(k), G.inv(best)));
        if (by_local[lc].first == -1) {
          by_local[lc] = {k, best};
        } else if (by_local[lc] != std::pair{k, best}) {
          throw InvalidArgument("orbit types do not match local subgroup classes");
        }
      }
    }
    for (int lc = 0; lc < loc.num_classes(); ++lc) {
      const auto [k, b] = by_local[lc];
      if (k < 0) throw InvalidArgument("local subgroup class without orbit type");
      types_[h].push_back({k, b, rep(h).order() / rep(k).order()});
    }
    for (int k = 0; k < m; ++k) {
      for (int a = 0; a < n; ++a) {
        const int b = coset_[h][a];
        const int c = canon_of[k * n + b];
        if (c < 0) continue;
        for (int t = 0; t < num_types(h); ++t)
          if (types_[h][t].cls == k && types_[h][t].elt == c) type_lookup_[h][k * n + a] = t;
      }
    }
    type_stab_[h].resize(num_types(h));
    for (int t = 0; t < num_types(h); ++t) {
      const auto& ty = types_[h][t];
      for (int d : coset_reps_[ty.cls]) {
        if (!std::binary_search(normalizer_[ty.cls].begin(), normalizer_[ty.cls].end(), d)) continue;
        if (coset_[h][G.mul(d, ty.elt)] == ty.elt) type_stab_[h][t].push_back(d);
      }
    }
  }

  restrict_table_.resize(morphisms_.size());
  for (int id = 0; id < num_morphisms(); ++id) {
    const int h = morphisms_[id].tgt;
    for (int t = 0; t < num_types(h); ++t) {
      RealizedSet single{h, {{types_[h][t].cls, types_[h][t].elt}}};
      restrict_table_[id].push_back(iso_class(*this, restrict_along(*this, single, id).set).counts);
    }
  }
  induce_table_.resize(m);
  for (int h = 0; h < m; ++h) {
    for (int t = 0; t < num_types(h); ++t) {
      const auto& ty = types_[h][t];
      std::vector<int> row;
      for (int t2 = 0; t2 < num_types(ty.cls); ++t2) {
        const auto& inner = types_[ty.cls][t2];
        row.push_back(type_of(h, inner.cls, coset_[h][G.mul(inner.elt, ty.elt)]));
      }
      induce_table_[h].push_back(std::move(row));
    }
  }
}

std::shared_ptr<const OrbitCategory> OrbitCategory::make(const Group& g) {
  return std::make_shared<const OrbitCategory>(std::make_shared<const Group>(g));
}

int OrbitCategory::find_morphism(int k, int h, int elt) const {
  const int m = num_levels();
  if (k < 0 || h < 0 || k >= m || h >= m || elt < 0 || elt >= group_->order()) return -1;
  return morph_lookup_[(static_cast<std::size_t>(k) * m + h) * group_->order() + elt];
}

int OrbitCategory::compose(int outer, int inner) const {
  const Morphism& o = morphisms_[outer];
  const Morphism& i = morphisms_[inner];
  if (i.tgt != o.src) throw InvalidArgument("morphisms are not composable");
  return find_morphism(i.src, o.tgt, group_->mul(i.elt, o.elt));
}

// ---- level sets ----

LevelSet empty_set(const OrbitCategory& oc, int h) {
  return {h, std::vector<int>(oc.num_types(h), 0)};
}

LevelSet point(const OrbitCategory& oc, int h, int copies) {
  LevelSet s = empty_set(oc, h);
  s.counts[oc.point_type(h)] = copies;
  return s;
}

int cardinality(const OrbitCategory& oc, const LevelSet& s) {
  int total = 0;
  for (int t = 0; t < static_cast<int>(s.counts.size()); ++t)
    total += s.counts[t] * oc.type(s.level, t).size;
  return total;
}

int num_orbits(const LevelSet& s) {
  return std::accumulate(s.counts.begin(), s.counts.end(), 0);
}

LevelSet add(const LevelSet& a, const LevelSet& b) {
  if (a.level != b.level || a.counts.size() != b.counts.size())
    throw InvalidArgument("adding sets at different levels");
  LevelSet r = a;
  for (std::size_t i = 0; i < r.counts.size(); ++i) r.counts[i] += b.counts[i];
  return r;
}

bool is_summand(const LevelSet& part, const LevelSet& whole) {
  if (part.level != whole.level) return false;
  for (std::size_t i = 0; i < part.counts.size(); ++i)
    if (part.counts[i] > whole.counts[i]) return false;
  return true;
}

bool is_transitive(const LevelSet& s) { return num_orbits(s) == 1; }

std::vector<LevelSet> enumerate_sets(const OrbitCategory& oc, int h, int bound) {
  std::vector<LevelSet> out;
  LevelSet cur = empty_set(oc, h);
  const int nt = oc.num_types(h);
  auto rec = [&](auto&& self, int t, int budget) -> void {
    if (t == nt) {
      out.push_back(cur);
      return;
    }
    const int sz = oc.type(h, t).size;
    for (int c = 0; c * sz <= budget; ++c) {
      cur.counts[t] = c;
      self(self, t + 1, budget - c * sz);
    }
    cur.counts[t] = 0;
  };
  rec(rec, 0, bound);
  std::stable_sort(out.begin(), out.end(), [&](const LevelSet& a, const LevelSet& b) {
    const int ca = cardinality(oc, a), cb = cardinality(oc, b);
    if (ca != cb) return ca < cb;
    return a.counts < b.counts;
  });
  return out;
}

// ---- realized sets ----

RealizedSet realize(const OrbitCategory& oc, const LevelSet& s) {
  RealizedSet r{s.level, {}};
  for (int t = 0; t < static_cast<int>(s.counts.size()); ++t)
    for (int c = 0; c < s.counts[t]; ++c) r.orbits.push_back({oc.type(s.level, t).cls, oc.type(s.level, t).elt});
  return r;
}

LevelSet iso_class(const OrbitCategory& oc, const RealizedSet& a) {
  LevelSet s = empty_set(oc, a.level);
  for (const auto& o : a.orbits) {
    const int t = oc.type_of(a.level, o.cls, o.elt);
    if (t < 0) throw InvalidArgument("orbit does not lie over the level");
    ++s.counts[t];
  }
  return s;
}

int cardinality(const OrbitCategory& oc, const RealizedSet& a) {
  int total = 0;
  for (const auto& o : a.orbits) total += oc.level_order(a.level) / oc.level_order(o.cls);
  return total;
}

Canonical canonicalize(const OrbitCategory& oc, const RealizedSet& a) {
  const Group& G = oc.group();
  Canonical c;
  c.iso = iso_class(oc, a);
  c.set = realize(oc, c.iso);
  std::vector<int> start(c.iso.counts.size() + 1, 0);
  for (std::size_t t = 0; t < c.iso.counts.size(); ++t) start[t + 1] = start[t] + c.iso.counts[t];
  c.to_canonical.resize(a.orbits.size());
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    const auto& o = a.orbits[i];
    const int t = oc.type_of(a.level, o.cls, o.elt);
    const int w = oc.type_normalizer(a.level, o.cls, o.elt);
    c.to_canonical[i] = {start[t]++, oc.coset(o.cls, G.inv(w))};
  }
  return c;
}

Restricted restrict_along(const OrbitCategory& oc, const RealizedSet& a, int morphism) {
  const Group& G = oc.group();
  const auto& mor = oc.morphism(morphism);
  if (mor.tgt != a.level) throw InvalidArgument("restriction along a morphism into another level");
  const int h = mor.tgt, u = mor.src, c = mor.elt;
  const Subgroup& ru = oc.rep(u);
  Restricted r;
  r.set.level = u;
  std::vector<char> seen(G.order());
  for (int i = 0; i < static_cast<int>(a.orbits.size()); ++i) {
    const int k = a.orbits[i].cls, b = a.orbits[i].elt;
    std::fill(seen.begin(), seen.end(), 0);
    for (int y : oc.coset_reps(k)) {
      if (seen[y] || oc.coset(h, G.mul(y, b)) != c) continue;
      for (int x : ru.elements) seen[oc.coset(k, G.mul(x, y))] = 1;
      const Subgroup l_sub = intersect(ru, conjugate_subgroup(G, oc.rep(k), y));
      const int l = oc.lattice().class_of(l_sub);
      const int z = oc.lattice().to_rep(l_sub);
      r.set.orbits.push_back({l, oc.coset(u, z)});
      r.projection.push_back({i, oc.coset(k, G.mul(z, y))});
    }
  }
  return r;
}

LevelSet restrict_along(const OrbitCategory& oc, const LevelSet& s, int morphism) {
  const auto& mor = oc.morphism(morphism);
  if (mor.tgt != s.level) throw InvalidArgument("restriction along a morphism into another level");
  LevelSet r = empty_set(oc, mor.src);
  for (int t = 0; t < static_cast<int>(s.counts.size()); ++t) {
    if (s.counts[t] == 0) continue;
    const auto& row = oc.restrict_type(morphism, t);
    for (std::size_t j = 0; j < row.size(); ++j) r.counts[j] += s.counts[t] * row[j];
  }
  return r;
}

Coproduct indexed_coproduct(const OrbitCategory& oc, const RealizedSet& s,
                            const std::vector<RealizedSet>& parts) {
  const Group& G = oc.group();
  if (parts.size() != s.orbits.size()) throw InvalidArgument("one summand per orbit required");
  Coproduct c;
  c.set.level = s.level;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].level != s.orbits[i].cls) throw InvalidArgument("summand at the wrong level");
    c.offsets.push_back(static_cast<int>(c.set.orbits.size()));
    for (const auto& o : parts[i].orbits) {
      c.set.orbits.push_back({o.cls, oc.coset(s.level, G.mul(o.elt, s.orbits[i].elt))});
      c.projection.push_back({static_cast<int>(i), o.elt});
    }
  }
  return c;
}

LevelSet indexed_coproduct(const OrbitCategory& oc, const LevelSet& s,
                           const std::vector<LevelSet>& parts) {
  LevelSet r = empty_set(oc, s.level);
  std::size_t next = 0;
  for (int t = 0; t < static_cast<int>(s.counts.size()); ++t) {
    for (int c = 0; c < s.counts[t]; ++c, ++next) {
      if (next >= parts.size()) throw InvalidArgument("one summand per orbit required");
      const LevelSet& p = parts[next];
      if (p.level != oc.type(s.level, t).cls) throw InvalidArgument("summand at the wrong level");
      for (int t2 = 0; t2 < static_cast<int>(p.counts.size()); ++t2)
        r.counts[oc.induce_type(s.level, t, t2)] += p.counts[t2];
    }
  }
  if (next != parts.size()) throw InvalidArgument("one summand per orbit required");
  return r;
}

Fibers fibers(const OrbitCategory& oc, const RealizedSet& domain, const SetMap& f,
              const RealizedSet& codomain) {
  (void)oc;
  Fibers out;
  for (const auto& o : codomain.orbits) out.sets.push_back({o.cls, {}});
  out.members.resize(codomain.orbits.size());
  for (std::size_t j = 0; j < domain.orbits.size(); ++j) {
    const int i = f[j].target;
    out.sets[i].orbits.push_back({domain.orbits[j].cls, f[j].elt});
    out.members[i].push_back(static_cast<int>(j));
  }
  return out;
}

// ---- maps ----

SetMap compose(const OrbitCategory& oc, const SetMap& f, const SetMap& g, const RealizedSet& c) {
  const Group& G = oc.group();
  SetMap r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& e = g[f[i].target];
    r[i] = {e.target, oc.coset(c.orbits[e.target].cls, G.mul(f[i].elt, e.elt))};
  }
  return r;
}

SetMap inverse(const OrbitCategory& oc, const SetMap& iso, const RealizedSet& a,
               const RealizedSet& b) {
  const Group& G = oc.group();
  SetMap r(b.orbits.size(), {-1, 0});
  for (std::size_t i = 0; i < iso.size(); ++i)
    r[iso[i].target] = {static_cast<int>(i), oc.coset(a.orbits[i].cls, G.inv(iso[i].elt))};
  return r;
}

SetMap identity_map(const RealizedSet& a) {
  SetMap r;
  for (std::size_t i = 0; i < a.orbits.size(); ++i) r.push_back({static_cast<int>(i), 0});
  return r;
}

bool is_map(const OrbitCategory& oc, const SetMap& f, const RealizedSet& a,
            const RealizedSet& b, bool over_level) {
  const Group& G = oc.group();
  if (f.size() != a.orbits.size()) return false;
  if (over_level && a.level != b.level) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int j = f[i].target, d = f[i].elt;
    if (j < 0 || j >= static_cast<int>(b.orbits.size()) || d < 0 || d >= G.order()) return false;
    const auto& src = a.orbits[i];
    const auto& tgt = b.orbits[j];
    if (!oc.rep(tgt.cls).includes(conjugate_subgroup(G, oc.rep(src.cls), G.inv(d)))) return false;
    if (over_level && oc.coset(a.level, G.mul(d, tgt.elt)) != oc.coset(a.level, src.elt)) return false;
  }
  return true;
}

bool is_iso(const OrbitCategory& oc, const SetMap& f, const RealizedSet& a, const RealizedSet& b) {
  if (a.orbits.size() != b.orbits.size() || !is_map(oc, f, a, b, true)) return false;
  std::vector<char> hit(b.orbits.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (hit[f[i].target] || a.orbits[i].cls != b.orbits[f[i].target].cls) return false;
    hit[f[i].target] = 1;
  }
  return true;
}

std::vector<SetMap> automorphisms(const OrbitCategory& oc, const RealizedSet& a, std::size_t cap) {
  const Canonical c = canonicalize(oc, a);
  const int h = a.level;
  double total = 1;
  for (int t = 0; t < static_cast<int>(c.iso.counts.size()); ++t) {
    const int m = c.iso.counts[t];
    for (int i = 2; i <= m; ++i) total *= i;
    for (int i = 0; i < m; ++i) total *= static_cast<double>(oc.type_stabilizer(h, t).size());
  }
  if (total > static_cast<double>(cap)) throw CapExceeded("too many automorphisms");

  // Automorphisms of the canonical realization: a permutation of each block of
  // equal types, and a stabilizer element per slot.
  std::vector<int> block_of;
  std::vector<int> start;
  for (int t = 0, pos = 0; t < static_cast<int>(c.iso.counts.size()); ++t) {
    start.push_back(pos);
    for (int i = 0; i < c.iso.counts[t]; ++i) block_of.push_back(t);
    pos += c.iso.counts[t];
  }
  const int n = static_cast<int>(block_of.size());
  std::vector<SetMap> canon_autos;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<SetMap> perms;
  auto perm_rec = [&](auto&& self, int t) -> void {
    if (t == static_cast<int>(c.iso.counts.size())) {
      SetMap m(n);
      for (int i = 0; i < n; ++i) m[i] = {perm[i], 0};
      perms.push_back(m);
      return;
    }
    auto first = perm.begin() + start[t];
    auto last = first + c.iso.counts[t];
    std::sort(first, last);
    do {
      self(self, t + 1);
    } while (std::next_permutation(first, last));
  };
  perm_rec(perm_rec, 0);
  for (const auto& p : perms) {
    SetMap cur = p;
    auto stab_rec = [&](auto&& self, int i) -> void {
      if (i == n) {
        canon_autos.push_back(cur);
        return;
      }
      for (int d : oc.type_stabilizer(h, block_of[i])) {
        cur[i].elt = d;
        self(self, i + 1);
      }
    };
    stab_rec(stab_rec, 0);
  }
  const SetMap back = inverse(oc, c.to_canonical, a, c.set);
  std::vector<SetMap> out;
  out.reserve(canon_autos.size());
  for (const auto& phi : canon_autos)
    out.push_back(compose(oc, compose(oc, c.to_canonical, phi, c.set), back, a));
  return out;
}

// ---- conversion ----

GSet to_vset(const OrbitCategory& oc, const RealizedSet& a) {
  const Group& G = oc.group();
  const int h = a.level;
  const Subgroup& v = oc.rep(h);
  std::vector<int> offset;
  std::vector<std::vector<int>> pts;  // per orbit: coset reps over eR_h
  int size = 0;
  for (const auto& o : a.orbits) {
    std::vector<int> p;
    for (int y : oc.coset_reps(o.cls))
      if (oc.coset(h, G.mul(y, o.elt)) == 0) p.push_back(y);
    offset.push_back(size);
    size += static_cast<int>(p.size());
    pts.push_back(std::move(p));
  }
  std::vector<std::vector<int>> action(G.order());
  for (int x : v.elements) {
    action[x].resize(size);
    for (std::size_t i = 0; i < a.orbits.size(); ++i) {
      for (std::size_t j = 0; j < pts[i].size(); ++j) {
        const int img = oc.coset(a.orbits[i].cls, G.mul(x, pts[i][j]));
        const auto it = std::lower_bound(pts[i].begin(), pts[i].end(), img);
        action[x][offset[i] + j] = offset[i] + static_cast<int>(it - pts[i].begin());
      }
    }
  }
  return GSet(oc.group_ptr(), v, size, std::move(action));
}

RealizedSet from_vset(const OrbitCategory& oc, const GSet& x) {
  const int h = oc.lattice().class_of(x.acting());
  if (oc.rep(h) != x.acting()) throw InvalidArgument("acting subgroup is not a class representative");
  RealizedSet r{h, {}};
  for (const Orbit& o : orbit_decomposition(x, oc.local_lattice(h))) {
    const int l = oc.lattice().class_of(o.stabilizer);
    const int z = oc.lattice().to_rep(o.stabilizer);
    r.orbits.push_back({l, oc.coset(h, z)});
  }
  return r;
}

LevelSet level_iso_class(const OrbitCategory& oc, const GSet& x) {
  return iso_class(oc, from_vset(oc, x));
}

GSetIso to_gset_iso(const LevelSet& s) { return {s.counts}; }

LevelSet from_gset_iso(const OrbitCategory& oc, int h, const GSetIso& s) {
  if (static_cast<int>(s.counts.size()) != oc.num_types(h))
    throw InvalidArgument("iso class has the wrong number of entries");
  return {h, s.counts};
}

}  // namespace eqv

namespace eqv {

SubgroupEmbedding::SubgroupEmbedding(OrbitCategoryPtr ambient, const Subgroup& h) : ambient_(std::move(ambient)) {
  const Group& G = ambient_->group();
  if (!is_subgroup(G, h.elements)) throw InvalidArgument("not a subgroup");
  elements_ = h.elements;
  const int n = h.order();
  std::vector<int> index(G.order(), -1);
  for (int i = 0; i < n; ++i) index[elements_[i]] = i;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) table[i][j] = index[G.mul(elements_[i], elements_[j])];
    if (!G.labels().empty()) labels.push_back(G.labels()[elements_[i]]);
  }
  sub_ = OrbitCategory::make(Group::from_table(G.name() + "|" + std::to_string(n), std::move(table), labels));
  const OrbitCategory& s = *sub_;
  for (int k = 0; k < s.num_levels(); ++k) {
    Subgroup k_in_g;
    for (int x : s.rep(k).elements) k_in_g.elements.push_back(elements_[x]);
    std::sort(k_in_g.elements.begin(), k_in_g.elements.end());
    level_.push_back(ambient_->lattice().class_of(k_in_g));
    conj_.push_back(ambient_->lattice().to_rep(k_in_g));
  }
  for (int m = 0; m < s.num_morphisms(); ++m) {
    const auto& mor = s.morphism(m);
    const int b = G.mul(G.mul(conj_[mor.src], elements_[mor.elt]), G.inv(conj_[mor.tgt]));
    morphism_.push_back(ambient_->find_morphism(level_[mor.src], level_[mor.tgt], b));
  }
}

RealizedSet SubgroupEmbedding::set(const RealizedSet& a) const {
  const Group& G = ambient_->group();
  RealizedSet r{level_[a.level], {}};
  const int ak = G.inv(conj_[a.level]);
  for (const auto& o : a.orbits)
    r.orbits.push_back({level_[o.cls], ambient_->coset(r.level, G.mul(G.mul(conj_[o.cls], elements_[o.elt]), ak))});
  return r;
}

SetMap SubgroupEmbedding::map(const SetMap& f, const RealizedSet& a, const RealizedSet& b) const {
  const Group& G = ambient_->group();
  SetMap r;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int li = a.orbits[i].cls, lj = b.orbits[f[i].target].cls;
    const int d = G.mul(G.mul(conj_[li], elements_[f[i].elt]), G.inv(conj_[lj]));
    r.push_back({f[i].target, ambient_->coset(level_[lj], d)});
  }
  return r;
}

}  // namespace eqv
