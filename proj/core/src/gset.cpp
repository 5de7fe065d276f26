#include "eqv/gset.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "eqv/error.hpp"

namespace eqv {

GSet::GSet(std::shared_ptr<const Group> group, Subgroup acting, int size,
           std::vector<std::vector<int>> action)
    : group_(std::move(group)), acting_(std::move(acting)), size_(size),
      action_(std::move(action)) {
  const Group& g = *group_;
  if (static_cast<int>(action_.size()) != g.order())
    throw InvalidArgument("action table needs one row per group element");
  for (int a : acting_.elements) {
    const auto& row = action_[a];
    if (static_cast<int>(row.size()) != size_) throw InvalidArgument("action row has wrong size");
    for (int x : row)
      if (x < 0 || x >= size_) throw InvalidArgument("action row leaves the point set");
  }
  for (int x = 0; x < size_; ++x)
    if (action_[0][x] != x) throw InvalidArgument("identity does not act trivially");
  for (int a : acting_.elements)
    for (int b : acting_.elements)
      for (int x = 0; x < size_; ++x)
        if (action_[a][action_[b][x]] != action_[g.mul(a, b)][x])
          throw InvalidArgument("action does not respect multiplication");
}

Subgroup GSet::stabilizer(int x) const {
  Subgroup s;
  for (int a : acting_.elements)
    if (action_[a][x] == x) s.elements.push_back(a);
  return s;
}

std::vector<int> GSet::fixed_points(const Subgroup& k) const {
  std::vector<int> out;
  for (int x = 0; x < size_; ++x) {
    bool fixed = true;
    for (int a : k.elements)
      if (action_[a][x] != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

bool GMap::is_equivariant() const {
  if (!(source.acting() == target.acting())) return false;
  if (static_cast<int>(f.size()) != source.size()) return false;
  for (int a : source.acting().elements)
    for (int x = 0; x < source.size(); ++x)
      if (f[source.act(a, x)] != target.act(a, f[x])) return false;
  return true;
}

int GSetIso::num_orbits() const { return std::accumulate(counts.begin(), counts.end(), 0); }

GSet point_set(std::shared_ptr<const Group> g, const Subgroup& acting, int copies) {
  std::vector<std::vector<int>> action(g->order());
  std::vector<int> id(copies);
  std::iota(id.begin(), id.end(), 0);
  for (int a : acting.elements) action[a] = id;
  return GSet(std::move(g), acting, copies, std::move(action));
}

GSet coset_set(std::shared_ptr<const Group> g, const Subgroup& acting, const Subgroup& k) {
  if (!acting.includes(k)) throw InvalidArgument("coset set needs K inside the acting group");
  const Group& G = *g;
  std::vector<int> reps = left_coset_reps(G, acting, k);
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) index[reps[i]] = i;
  std::vector<std::vector<int>> action(G.order());
  for (int a : acting.elements) {
    auto& row = action[a];
    row.resize(reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i)
      row[i] = index.at(left_coset_rep(G, G.mul(a, reps[i]), k));
  }
  const int n = static_cast<int>(reps.size());
  return GSet(std::move(g), acting, n, std::move(action));
}

GSet from_permutation_action(std::shared_ptr<const Group> g, const Subgroup& acting,
                             int size, const std::vector<Perm>& images) {
  std::vector<std::vector<int>> action(g->order());
  for (int a : acting.elements) action[a] = images.at(a);
  return GSet(std::move(g), acting, size, std::move(action));
}

std::vector<Orbit> orbit_decomposition(const GSet& x, const SubgroupLattice& l) {
  if (!(l.ambient() == x.acting())) throw InvalidArgument("lattice ambient differs from acting group");
  std::vector<Orbit> out;
  std::vector<char> seen(x.size(), 0);
  for (int p = 0; p < x.size(); ++p) {
    if (seen[p]) continue;
    Orbit o;
    std::set<int> pts;
    for (int a : x.acting().elements) pts.insert(x.act(a, p));
    for (int q : pts) seen[q] = 1;
    o.points.assign(pts.begin(), pts.end());
    o.stabilizer = x.stabilizer(p);
    o.stabilizer_class = l.class_of(o.stabilizer);
    out.push_back(std::move(o));
  }
  return out;
}

GSetIso iso_class(const GSet& x, const SubgroupLattice& l) {
  GSetIso iso;
  iso.counts.assign(l.num_classes(), 0);
  for (const auto& o : orbit_decomposition(x, l)) ++iso.counts[o.stabilizer_class];
  return iso;
}

int cardinality(const GSetIso& s, const SubgroupLattice& l) {
  int n = 0;
  for (int c = 0; c < static_cast<int>(s.counts.size()); ++c)
    n += s.counts[c] * (l.ambient().order() / l.class_rep(c).order());
  return n;
}

GSet disjoint_union(const GSet& a, const GSet& b) {
  if (!(a.acting() == b.acting())) throw InvalidArgument("disjoint union needs equal acting groups");
  std::vector<std::vector<int>> action(a.group().order());
  for (int g : a.acting().elements) {
    auto& row = action[g];
    row.resize(a.size() + b.size());
    for (int x = 0; x < a.size(); ++x) row[x] = a.act(g, x);
    for (int y = 0; y < b.size(); ++y) row[a.size() + y] = a.size() + b.act(g, y);
  }
  return GSet(a.group_ptr(), a.acting(), a.size() + b.size(), std::move(action));
}

GSet cartesian_product(const GSet& a, const GSet& b) {
  if (!(a.acting() == b.acting())) throw InvalidArgument("product needs equal acting groups");
  std::vector<std::vector<int>> action(a.group().order());
  for (int g : a.acting().elements) {
    auto& row = action[g];
    row.resize(a.size() * b.size());
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < b.size(); ++y) row[x * b.size() + y] = a.act(g, x) * b.size() + b.act(g, y);
  }
  return GSet(a.group_ptr(), a.acting(), a.size() * b.size(), std::move(action));
}

GSet realize(const GSetIso& iso, const SubgroupLattice& l) {
  if (static_cast<int>(iso.counts.size()) != l.num_classes())
    throw InvalidArgument("iso class has wrong number of class entries");
  GSet out = point_set(l.group_ptr(), l.ambient(), 0);
  for (int c = 0; c < l.num_classes(); ++c) {
    if (iso.counts[c] < 0) throw InvalidArgument("negative orbit multiplicity");
    for (int m = 0; m < iso.counts[c]; ++m)
      out = disjoint_union(out, coset_set(l.group_ptr(), l.ambient(), l.class_rep(c)));
  }
  return out;
}

GSet induce(const GSet& x, const Subgroup& to) {
  const Group& G = x.group();
  const Subgroup& h = x.acting();
  if (!to.includes(h)) throw InvalidArgument("induction target must contain the acting group");
  std::vector<int> reps = left_coset_reps(G, to, h);
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) index[reps[i]] = i;
  const int n = x.size();
  std::vector<std::vector<int>> action(G.order());
  for (int g : to.elements) {
    auto& row = action[g];
    row.resize(reps.size() * n);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const int gr = G.mul(g, reps[i]);
      const int r2 = left_coset_rep(G, gr, h);
      const int hh = G.mul(G.inv(r2), gr);
      for (int p = 0; p < n; ++p) row[i * n + p] = index.at(r2) * n + x.act(hh, p);
    }
  }
  return GSet(x.group_ptr(), to, static_cast<int>(reps.size()) * n, std::move(action));
}

GSet restrict(const GSet& x, const Subgroup& to) {
  if (!x.acting().includes(to)) throw InvalidArgument("restriction target must lie in the acting group");
  std::vector<std::vector<int>> action(x.group().order());
  for (int g : to.elements) action[g] = x.action()[g];
  return GSet(x.group_ptr(), to, x.size(), std::move(action));
}

GSet conjugate(const GSet& x, int a) {
  const Group& G = x.group();
  Subgroup to = conjugate_subgroup(G, x.acting(), a);
  std::vector<std::vector<int>> action(G.order());
  for (int h : x.acting().elements) action[G.conj(a, h)] = x.action()[h];
  return GSet(x.group_ptr(), to, x.size(), std::move(action));
}

Pullback pullback(const GMap& f, const GMap& g) {
  if (!(f.target == g.target)) throw InvalidArgument("pullback needs a common codomain");
  Pullback pb;
  std::map<std::pair<int, int>, int> index;
  for (int a = 0; a < f.source.size(); ++a)
    for (int b = 0; b < g.source.size(); ++b)
      if (f.f[a] == g.f[b]) {
        index[{a, b}] = static_cast<int>(pb.pairs.size());
        pb.pairs.emplace_back(a, b);
      }
  const int n = static_cast<int>(pb.pairs.size());
  std::vector<std::vector<int>> action(f.source.group().order());
  for (int h : f.source.acting().elements) {
    auto& row = action[h];
    row.resize(n);
    for (int i = 0; i < n; ++i)
      row[i] = index.at({f.source.act(h, pb.pairs[i].first), g.source.act(h, pb.pairs[i].second)});
  }
  pb.apex = GSet(f.source.group_ptr(), f.source.acting(), n, std::move(action));
  pb.left = GMap{pb.apex, f.source, {}};
  pb.right = GMap{pb.apex, g.source, {}};
  for (const auto& [a, b] : pb.pairs) {
    pb.left.f.push_back(a);
    pb.right.f.push_back(b);
  }
  return pb;
}

namespace {

struct OrbitRep {
  int point;
  Subgroup stab;
};

std::vector<OrbitRep> orbit_reps(const GSet& x) {
  std::vector<OrbitRep> reps;
  std::vector<char> seen(x.size(), 0);
  for (int p = 0; p < x.size(); ++p) {
    if (seen[p]) continue;
    for (int a : x.acting().elements) seen[x.act(a, p)] = 1;
    reps.push_back({p, x.stabilizer(p)});
  }
  return reps;
}

// Backtracking over images of orbit representatives. With `bijective`, each
// representative must land on a point with equal stabilizer in an unused orbit.
void enumerate_maps(const GSet& x, const GSet& y, bool bijective,
                    const std::function<bool(const std::vector<int>&)>& visit) {
  if (!(x.acting() == y.acting())) throw InvalidArgument("maps need equal acting groups");
  if (bijective && x.size() != y.size()) return;
  const auto reps = orbit_reps(x);
  std::vector<std::vector<int>> candidates;
  for (const auto& r : reps) {
    std::vector<int> c;
    for (int q : y.fixed_points(r.stab))
      if (!bijective || y.stabilizer(q) == r.stab) c.push_back(q);
    candidates.push_back(std::move(c));
  }
  std::vector<int> f(x.size(), -1);
  std::vector<char> used(y.size(), 0);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == reps.size()) {
      if (!visit(f)) stop = true;
      return;
    }
    for (int q : candidates[i]) {
      if (bijective && used[q]) continue;
      std::vector<int> touched;
      for (int a : x.acting().elements) {
        const int p = x.act(a, reps[i].point);
        if (f[p] < 0) {
          f[p] = y.act(a, q);
          touched.push_back(p);
        }
      }
      if (bijective)
        for (int p : touched) used[f[p]] = 1;
      rec(i + 1);
      for (int p : touched) {
        if (bijective) used[f[p]] = 0;
        f[p] = -1;
      }
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace

void for_each_equivariant_map(const GSet& x, const GSet& y,
                              const std::function<bool(const std::vector<int>&)>& visit) {
  enumerate_maps(x, y, false, visit);
}

std::vector<std::vector<int>> equivariant_maps(const GSet& x, const GSet& y) {
  std::vector<std::vector<int>> out;
  enumerate_maps(x, y, false, [&](const std::vector<int>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::optional<std::vector<int>> find_isomorphism(const GSet& x, const GSet& y) {
  std::optional<std::vector<int>> out;
  enumerate_maps(x, y, true, [&](const std::vector<int>& f) {
    out = f;
    return false;
  });
  return out;
}

std::vector<std::vector<int>> automorphisms(const GSet& x) {
  std::vector<std::vector<int>> out;
  enumerate_maps(x, x, true, [&](const std::vector<int>& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

Group aut_group(const GSet& x, std::size_t cap) {
  std::vector<Perm> perms;
  bool over = false;
  enumerate_maps(x, x, true, [&](const std::vector<int>& f) {
    perms.push_back(f);
    if (perms.size() > cap) {
      over = true;
      return false;
    }
    return true;
  });
  if (over) throw CapExceeded("automorphism group exceeds size cap");
  if (x.size() == 0) perms = {Perm{}};
  return group_from_permutations(std::move(perms), "Aut");
}

std::vector<GMap> hom_set(const SubgroupLattice& l, const Subgroup& k, const Subgroup& h) {
  if (l.index_of(k) < 0 || l.index_of(h) < 0) throw InvalidArgument("subgroup not in lattice");
  GSet src = coset_set(l.group_ptr(), l.ambient(), k);
  GSet dst = coset_set(l.group_ptr(), l.ambient(), h);
  std::vector<GMap> out;
  for (auto& f : equivariant_maps(src, dst)) out.push_back(GMap{src, dst, std::move(f)});
  return out;
}

std::optional<SparseDecomposition> is_sparse(const GSetIso& x, const SubgroupLattice& l) {
  const int top = l.top_class();
  SparseDecomposition d;
  if (x.counts[top] > 1) return std::nullopt;
  d.has_point = x.counts[top] == 1;
  for (int c = 0; c < top; ++c) {
    if (x.counts[c] > 1) return std::nullopt;
    if (x.counts[c] == 1) d.summand_classes.push_back(c);
  }
  for (int a : d.summand_classes)
    for (int b : d.summand_classes)
      if (a != b && l.subconjugate(a, b)) return std::nullopt;
  return d;
}

std::optional<SparseDecomposition> is_sparse(const GSet& x, const SubgroupLattice& l) {
  return is_sparse(iso_class(x, l), l);
}

std::vector<GSetIso> sparse_sets(const SubgroupLattice& l) {
  const int top = l.top_class();
  std::vector<GSetIso> out;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int c) {
    if (c == top) {
      for (int eps = 0; eps <= 1; ++eps) {
        GSetIso s;
        s.counts.assign(l.num_classes(), 0);
        for (int w : chosen) s.counts[w] = 1;
        s.counts[top] = eps;
        out.push_back(std::move(s));
      }
      return;
    }
    rec(c + 1);
    for (int w : chosen)
      if (l.subconjugate(w, c) || l.subconjugate(c, w)) return;
    chosen.push_back(c);
    rec(c + 1);
    chosen.pop_back();
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

DoubleCosetCheck check_double_coset(std::shared_ptr<const Group> g, const Subgroup& h,
                                    const Subgroup& j, const Subgroup& k) {
  if (!h.includes(j) || !h.includes(k)) throw InvalidArgument("J and K must lie in H");
  const Group& G = *g;
  SubgroupLattice lj(g, j);
  DoubleCosetCheck out;
  out.lhs = iso_class(restrict(coset_set(g, h, k), j), lj);
  out.rhs.counts.assign(lj.num_classes(), 0);
  for (int a : double_cosets(G, j, h, k))
    ++out.rhs.counts[lj.class_of(intersect(j, conjugate_subgroup(G, k, a)))];
  out.equal = out.lhs == out.rhs;
  return out;
}

}  // namespace eqv
