#include "eqv/burnside.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "eqv/error.hpp"

namespace eqv {

bool is_span(const Span& s) {
  return GMap{s.apex, s.left, s.back}.is_equivariant() && GMap{s.apex, s.right, s.fwd}.is_equivariant();
}

GMap identity_gmap(const GSet& x) {
  std::vector<int> id(x.size());
  for (int i = 0; i < x.size(); ++i) id[i] = i;
  return GMap{x, x, std::move(id)};
}

Span identity_span(const GSet& x) {
  const GMap id = identity_gmap(x);
  return Span{x, x, x, id.f, id.f};
}

Span span_from_maps(const GMap& back, const GMap& fwd) {
  if (!(back.source == fwd.source)) throw InvalidArgument("span legs need a common apex");
  if (!back.is_equivariant() || !fwd.is_equivariant()) throw InvalidArgument("span legs must be equivariant");
  return Span{back.target, back.source, fwd.target, back.f, fwd.f};
}

Span restriction_span(const GMap& f) { return span_from_maps(f, identity_gmap(f.source)); }
Span transfer_span(const GMap& f) { return span_from_maps(identity_gmap(f.source), f); }

GMap compose_maps(const GMap& f, const GMap& g) {
  if (!(f.target == g.source)) throw InvalidArgument("maps are not composable");
  GMap out{f.source, g.target, std::vector<int>(f.f.size())};
  for (std::size_t i = 0; i < f.f.size(); ++i) out.f[i] = g.f[f.f[i]];
  return out;
}

Span compose_spans(const Span& s1, const Span& s2) {
  if (!(s1.right == s2.left)) throw InvalidArgument("middle feet differ; supply an isomorphism");
  const Pullback pb = pullback(GMap{s1.apex, s1.right, s1.fwd}, GMap{s2.apex, s2.left, s2.back});
  Span out{s1.left, pb.apex, s2.right, {}, {}};
  for (int p = 0; p < pb.apex.size(); ++p) {
    out.back.push_back(s1.back[pb.left.f[p]]);
    out.fwd.push_back(s2.fwd[pb.right.f[p]]);
  }
  return out;
}

Span compose_spans(const Span& s1, const Span& s2, const std::vector<int>& middle_iso) {
  const GMap iso{s1.right, s2.left, middle_iso};
  if (s1.right.size() != s2.left.size() || !iso.is_equivariant()) throw InvalidArgument("not an isomorphism of feet");
  std::vector<char> hit(s2.left.size(), 0);
  for (int v : middle_iso) hit[v] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw InvalidArgument("not an isomorphism of feet");
  Span moved = s1;
  moved.right = s2.left;
  for (int& v : moved.fwd) v = middle_iso[v];
  return compose_spans(moved, s2);
}

namespace {

struct OrbitData {
  std::vector<int> reps;      // least point per orbit
  std::vector<int> orbit_of;  // per point
  std::vector<std::vector<int>> stab;
};

OrbitData orbits_of(const GSet& x) {
  OrbitData d;
  d.orbit_of.assign(x.size(), -1);
  for (int p = 0; p < x.size(); ++p) {
    if (d.orbit_of[p] >= 0) continue;
    const int id = static_cast<int>(d.reps.size());
    d.reps.push_back(p);
    for (int a : x.acting().elements) d.orbit_of[x.act(a, p)] = id;
  }
  d.stab.resize(x.size());
  for (int p = 0; p < x.size(); ++p)
    for (int a : x.acting().elements)
      if (x.act(a, p) == p) d.stab[p].push_back(a);
  return d;
}

}  // namespace

std::optional<std::vector<int>> span_isomorphism(const Span& a, const Span& b) {
  if (!(a.left == b.left) || !(a.right == b.right)) throw InvalidArgument("spans have different feet");
  if (a.apex.size() != b.apex.size()) return std::nullopt;
  const OrbitData oa = orbits_of(a.apex), ob = orbits_of(b.apex);
  if (oa.reps.size() != ob.reps.size()) return std::nullopt;
  const auto& acting = a.apex.acting().elements;
  std::vector<int> phi(a.apex.size(), -1);
  std::vector<char> used(ob.reps.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == oa.reps.size()) return true;
    const int p = oa.reps[i];
    for (int z = 0; z < b.apex.size(); ++z) {
      const int oz = ob.orbit_of[z];
      if (used[oz] || ob.stab[z] != oa.stab[p]) continue;
      if (b.back[z] != a.back[p] || b.fwd[z] != a.fwd[p]) continue;
      used[oz] = 1;
      for (int g : acting) phi[a.apex.act(g, p)] = b.apex.act(g, z);
      if (self(self, i + 1)) return true;
      used[oz] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return phi;
}

bool spans_isomorphic(const Span& a, const Span& b) { return span_isomorphism(a, b).has_value(); }

Span canonicalize_span(const Span& s) {
  const SubgroupLattice l(s.apex.group_ptr(), s.apex.acting());
  const GSet canon = realize(iso_class(s.apex, l), l);
  const auto phi = find_isomorphism(canon, s.apex);
  if (!phi) throw InvalidArgument("apex does not match its iso class");
  Span out{s.left, canon, s.right, {}, {}};
  for (int p = 0; p < canon.size(); ++p) {
    out.back.push_back(s.back[(*phi)[p]]);
    out.fwd.push_back(s.fwd[(*phi)[p]]);
  }
  return out;
}

Span smash_spans(const Span& a, const Span& b) {
  Span out{cartesian_product(a.left, b.left), cartesian_product(a.apex, b.apex), cartesian_product(a.right, b.right),
           {}, {}};
  for (int r = 0; r < a.apex.size(); ++r)
    for (int s = 0; s < b.apex.size(); ++s) {
      out.back.push_back(a.back[r] * b.left.size() + b.back[s]);
      out.fwd.push_back(a.fwd[r] * b.right.size() + b.fwd[s]);
    }
  return out;
}

bool span_in(const WeakIndexingSystem& w, const Span& s) { return is_member(w, GMap{s.apex, s.right, s.fwd}); }

std::optional<GMap> random_equivariant_map(const GSet& x, const GSet& y, std::mt19937& rng) {
  if (!(x.acting() == y.acting())) throw InvalidArgument("sets have different acting groups");
  const OrbitData ox = orbits_of(x);
  GMap f{x, y, std::vector<int>(x.size(), -1)};
  for (int p : ox.reps) {
    std::vector<int> cands;
    for (int q = 0; q < y.size(); ++q) {
      bool fixed = true;
      for (int k : ox.stab[p]) fixed = fixed && y.act(k, q) == q;
      if (fixed) cands.push_back(q);
    }
    if (cands.empty()) return std::nullopt;
    const int q = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
    for (int g : x.acting().elements) f.f[x.act(g, p)] = y.act(g, q);
  }
  return f;
}

GSet random_gset(const OrbitCategory& oc, int max_points, std::mt19937& rng) {
  const auto sets = enumerate_sets(oc, oc.top(), max_points);
  const LevelSet& s = sets[std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng)];
  return to_vset(oc, realize(oc, s));
}

std::vector<std::int64_t> span_counts(const OrbitCategory& oc, const GSet& x, const GSet& y, int max_apex) {
  const GSet p = cartesian_product(x, y);
  std::vector<std::int64_t> counts(max_apex + 1, 0);
  for (const LevelSet& s : enumerate_sets(oc, oc.top(), max_apex)) {
    const GSet r = to_vset(oc, realize(oc, s));
    const auto autos = automorphisms(r);
    std::set<std::vector<int>> classes;
    for_each_equivariant_map(r, p, [&](const std::vector<int>& f) {
      std::vector<int> best = f;
      for (const auto& a : autos) {
        std::vector<int> g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[a[i]];
        best = std::min(best, g);
      }
      classes.insert(best);
      return true;
    });
    counts[cardinality(oc, s)] += static_cast<std::int64_t>(classes.size());
  }
  return counts;
}

std::vector<int> span_atoms(const OrbitCategory& oc, const GSet& x, const GSet& y) {
  const GSet p = cartesian_product(x, y);
  const OrbitData d = orbits_of(p);
  std::vector<int> atoms;
  for (int rep : d.reps) {
    const int h = oc.lattice().class_of(Subgroup{d.stab[rep]});
    const auto& loc = oc.local_lattice(h);
    for (int t = 0; t < loc.num_classes(); ++t) atoms.push_back(oc.group().order() / loc.class_rep(t).order());
  }
  std::sort(atoms.begin(), atoms.end());
  return atoms;
}

std::vector<std::int64_t> series_from_atoms(const std::vector<int>& atoms, int max_size) {
  std::vector<std::int64_t> s(max_size + 1, 0);
  s[0] = 1;
  for (int a : atoms)
    for (int n = a; n <= max_size; ++n) s[n] += s[n - a];
  return s;
}

std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<std::int64_t> c(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  return c;
}

SemiadditivityReport check_semiadditivity(const OrbitCategory& oc, const GSet& x, const GSet& x2, const GSet& y,
                                          int max_apex) {
  SemiadditivityReport r;
  const auto xy = span_counts(oc, x, y, max_apex);
  const auto x2y = span_counts(oc, x2, y, max_apex);
  const auto sum = span_counts(oc, disjoint_union(x, x2), y, max_apex);
  r.additive = sum == convolve(xy, x2y);
  r.dual = xy == span_counts(oc, y, x, max_apex);
  r.atoms_match = xy == series_from_atoms(span_atoms(oc, x, y), max_apex) &&
                  sum == series_from_atoms(span_atoms(oc, disjoint_union(x, x2), y), max_apex);
  std::ostringstream out;
  if (!r.additive) out << "Hom(X+X',Y) differs from the product; ";
  if (!r.dual) out << "Hom(X,Y) differs from Hom(Y,X); ";
  if (!r.atoms_match) out << "counts differ from the transitive-object series; ";
  r.message = out.str();
  return r;
}

SemiMackey::SemiMackey(CoeffSystem values, std::vector<std::vector<int>> transfer)
    : values_(std::move(values)), transfer_(std::move(transfer)) {
  if (!values_.has_monoid()) throw InvalidArgument("semi-Mackey values must be commutative monoids");
  const OrbitCategory& oc = values_.category();
  if (static_cast<int>(transfer_.size()) != oc.num_morphisms())
    throw InvalidArgument("one transfer table per morphism required");
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    if (static_cast<int>(transfer_[m].size()) != values_.size(mor.src))
      throw InvalidArgument("transfer table has the wrong length");
    for (int v : transfer_[m])
      if (v < 0 || v >= values_.size(mor.tgt)) throw InvalidArgument("transfer value out of range");
  }
}

std::string SemiMackey::violation() const {
  if (auto v = values_.violation(); !v.empty()) return v;
  const OrbitCategory& oc = category();
  const Group& G = oc.group();
  std::ostringstream out;
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    if (transfer(m, values_.zero(mor.src)) != values_.zero(mor.tgt)) {
      out << "transfer along morphism " << m << " does not preserve zero";
      return out.str();
    }
    for (int a = 0; a < values_.size(mor.src); ++a)
      for (int b = 0; b < values_.size(mor.src); ++b)
        if (transfer(m, values_.add(mor.src, a, b)) != values_.add(mor.tgt, transfer(m, a), transfer(m, b))) {
          out << "transfer along morphism " << m << " is not additive";
          return out.str();
        }
  }
  for (int k = 0; k < oc.num_levels(); ++k)
    for (int x = 0; x < values_.size(k); ++x)
      if (transfer(oc.identity(k), x) != x) {
        out << "transfer along the identity at level " << k << " moves " << x;
        return out.str();
      }
  for (int outer = 0; outer < oc.num_morphisms(); ++outer)
    for (int inner = 0; inner < oc.num_morphisms(); ++inner) {
      if (oc.morphism(inner).tgt != oc.morphism(outer).src) continue;
      const int c = oc.compose(outer, inner);
      for (int x = 0; x < values_.size(oc.morphism(inner).src); ++x)
        if (transfer(c, x) != transfer(outer, transfer(inner, x))) {
          out << "transfer is not functorial on morphisms " << inner << " then " << outer;
          return out.str();
        }
    }
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    if (mor.src != mor.tgt) continue;
    const int back = oc.find_morphism(mor.src, mor.src, G.inv(mor.elt));
    for (int x = 0; x < values_.size(mor.src); ++x)
      if (transfer(m, x) != values_.restrict(back, x)) {
        out << "transfer along automorphism " << m << " differs from restriction along its inverse";
        return out.str();
      }
  }
  // double coset formula: restriction after transfer through the pullback
  for (int m1 = 0; m1 < oc.num_morphisms(); ++m1) {
    const auto& t = oc.morphism(m1);
    const RealizedSet orbit{t.tgt, {{t.src, t.elt}}};
    for (int m2 : oc.morphisms_into(t.tgt)) {
      const int j = oc.morphism(m2).src;
      const Restricted r = restrict_along(oc, orbit, m2);
      for (int x = 0; x < values_.size(t.src); ++x) {
        int rhs = values_.zero(j);
        for (std::size_t i = 0; i < r.set.orbits.size(); ++i) {
          const int l = r.set.orbits[i].cls;
          const int to_k = oc.find_morphism(l, t.src, r.projection[i].elt);
          const int to_j = oc.find_morphism(l, j, r.set.orbits[i].elt);
          rhs = values_.add(j, rhs, transfer(to_j, values_.restrict(to_k, x)));
        }
        if (values_.restrict(m2, transfer(m1, x)) != rhs) {
          out << "double coset formula fails for transfer " << m1 << " and restriction " << m2;
          return out.str();
        }
      }
    }
  }
  return {};
}

OrbitBasis orbit_basis(const OrbitCategory& oc, const GSet& x) {
  const Group& G = oc.group();
  if (x.acting().order() != G.order()) throw InvalidArgument("semi-Mackey evaluation needs G-sets");
  const OrbitData d = orbits_of(x);
  OrbitBasis b;
  b.orbit_of = d.orbit_of;
  b.translator.assign(x.size(), -1);
  for (int rep : d.reps) {
    const int k = oc.lattice().class_of(Subgroup{d.stab[rep]});
    int base = -1;
    for (int g = 0; g < G.order() && base < 0; ++g) {
      const int q = x.act(g, rep);
      if (d.stab[q] == oc.rep(k).elements) base = q;
    }
    for (int g = 0; g < G.order(); ++g) {
      const int q = x.act(g, base);
      if (b.translator[q] < 0) b.translator[q] = g;
    }
    b.level.push_back(k);
    b.base.push_back(base);
  }
  return b;
}

std::int64_t mackey_size(const SemiMackey& m, const GSet& x) {
  const OrbitBasis b = orbit_basis(m.category(), x);
  std::int64_t n = 1;
  for (int k : b.level) n *= m.values().size(k);
  return n;
}

std::vector<MackeyElement> mackey_elements(const SemiMackey& m, const GSet& x, std::size_t cap) {
  const OrbitBasis b = orbit_basis(m.category(), x);
  if (mackey_size(m, x) > static_cast<std::int64_t>(cap)) throw CapExceeded("too many elements of M(X)");
  std::vector<MackeyElement> out;
  MackeyElement e(b.level.size(), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == e.size()) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v < m.values().size(b.level[i]); ++v) {
      e[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

int orbit_map_morphism(const OrbitCategory& oc, const GMap& f, const OrbitBasis& src, const OrbitBasis& tgt, int a) {
  const int q = f.f[src.base[a]];
  const int b = tgt.orbit_of[q];
  const int m = oc.find_morphism(src.level[a], tgt.level[b], tgt.translator[q]);
  if (m < 0) throw InvalidArgument("map is not equivariant");
  return m;
}

MackeyElement mackey_restrict(const SemiMackey& m, const GMap& f, const MackeyElement& y) {
  const OrbitCategory& oc = m.category();
  const OrbitBasis src = orbit_basis(oc, f.source), tgt = orbit_basis(oc, f.target);
  if (y.size() != tgt.level.size()) throw InvalidArgument("element does not match the target");
  MackeyElement out(src.level.size());
  for (std::size_t a = 0; a < out.size(); ++a) {
    const int mor = orbit_map_morphism(oc, f, src, tgt, static_cast<int>(a));
    out[a] = m.values().restrict(mor, y[tgt.orbit_of[f.f[src.base[a]]]]);
  }
  return out;
}

MackeyElement mackey_transfer(const SemiMackey& m, const GMap& f, const MackeyElement& x) {
  const OrbitCategory& oc = m.category();
  const OrbitBasis src = orbit_basis(oc, f.source), tgt = orbit_basis(oc, f.target);
  if (x.size() != src.level.size()) throw InvalidArgument("element does not match the source");
  MackeyElement out(tgt.level.size());
  for (std::size_t b = 0; b < out.size(); ++b) out[b] = m.values().zero(tgt.level[b]);
  for (std::size_t a = 0; a < x.size(); ++a) {
    const int mor = orbit_map_morphism(oc, f, src, tgt, static_cast<int>(a));
    const int b = tgt.orbit_of[f.f[src.base[a]]];
    out[b] = m.values().add(tgt.level[b], out[b], m.transfer(mor, x[a]));
  }
  return out;
}

MackeyElement evaluate(const SemiMackey& m, const Span& s, const MackeyElement& x) {
  const MackeyElement y = mackey_restrict(m, GMap{s.apex, s.left, s.back}, x);
  return mackey_transfer(m, GMap{s.apex, s.right, s.fwd}, y);
}

namespace {

/// Encodes count vectors in {0..cap}^n, first coordinate most significant.
int encode_counts(const std::vector<int>& c, int cap) {
  int v = 0;
  for (int x : c) v = v * (cap + 1) + x;
  return v;
}

std::vector<int> decode_counts(int v, int n, int cap) {
  std::vector<int> c(n);
  for (int i = n - 1; i >= 0; --i) {
    c[i] = v % (cap + 1);
    v /= cap + 1;
  }
  return c;
}

}  // namespace

SemiMackey truncated_burnside(OrbitCategoryPtr oc, int cap) {
  if (cap < 1) throw InvalidArgument("cap must be positive");
  const int levels = oc->num_levels();
  std::vector<int> sizes(levels);
  for (int h = 0; h < levels; ++h) {
    std::int64_t n = 1;
    for (int t = 0; t < oc->num_types(h); ++t) n *= cap + 1;
    if (n > 200000) throw CapExceeded("truncated Burnside level too large");
    sizes[h] = static_cast<int>(n);
  }
  auto sat = [&](std::vector<int> c) {
    for (int& x : c) x = std::min(x, cap);
    return c;
  };
  // linear maps on count vectors, one column per source orbit type
  auto apply = [&](const std::vector<std::vector<int>>& columns, int v, int from, int to) {
    const auto c = decode_counts(v, oc->num_types(from), cap);
    std::vector<int> r(oc->num_types(to), 0);
    for (std::size_t t = 0; t < c.size(); ++t)
      for (std::size_t s = 0; s < r.size(); ++s) r[s] = std::min(cap, r[s] + c[t] * columns[t][s]);
    return encode_counts(r, cap);
  };
  std::vector<std::vector<int>> res(oc->num_morphisms()), tr(oc->num_morphisms());
  for (int m = 0; m < oc->num_morphisms(); ++m) {
    const auto& mor = oc->morphism(m);
    std::vector<std::vector<int>> rcols, tcols;
    for (int t = 0; t < oc->num_types(mor.tgt); ++t) rcols.push_back(oc->restrict_type(m, t));
    for (int t = 0; t < oc->num_types(mor.src); ++t) {
      LevelSet single = empty_set(*oc, mor.src);
      single.counts[t] = 1;
      const RealizedSet over{mor.tgt, {{mor.src, mor.elt}}};
      tcols.push_back(iso_class(*oc, indexed_coproduct(*oc, over, {realize(*oc, single)}).set).counts);
    }
    for (int v = 0; v < sizes[mor.tgt]; ++v) res[m].push_back(apply(rcols, v, mor.tgt, mor.src));
    for (int v = 0; v < sizes[mor.src]; ++v) tr[m].push_back(apply(tcols, v, mor.src, mor.tgt));
  }
  MonoidData md;
  for (int h = 0; h < levels; ++h) {
    const int n = oc->num_types(h);
    md.add.emplace_back(sizes[h], std::vector<int>(sizes[h]));
    for (int a = 0; a < sizes[h]; ++a)
      for (int b = 0; b < sizes[h]; ++b) {
        auto ca = decode_counts(a, n, cap), cb = decode_counts(b, n, cap);
        for (int i = 0; i < n; ++i) ca[i] += cb[i];
        md.add[h][a][b] = encode_counts(sat(ca), cap);
      }
    md.zero.push_back(0);
  }
  return SemiMackey(CoeffSystem(oc, sizes, std::move(res), std::move(md)), std::move(tr));
}

SemiMackey terminal_mackey(OrbitCategoryPtr oc) {
  const int n = oc->num_morphisms();
  return SemiMackey(terminal_system(std::move(oc)), std::vector<std::vector<int>>(n, {0}));
}

}  // namespace eqv
