#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <map>
#include <set>

namespace oracle {

using namespace eqv;

std::shared_ptr<const Group> group(const std::string& name) {
  return std::make_shared<const Group>(named_group(name));
}

std::vector<std::vector<int>> all_subgroups(const Group& g) {
  const int n = g.order();
  std::vector<std::vector<int>> out;
  for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
    std::vector<int> s = {0};
    for (int i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.push_back(i);
    bool closed = true;
    for (int a : s)
      for (int b : s)
        if (!std::binary_search(s.begin(), s.end(), g.mul(a, b))) closed = false;
    if (closed) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<int>> double_coset_blocks(const Group& g, const Subgroup& j,
                                                  const Subgroup& h, const Subgroup& k) {
  std::vector<std::vector<int>> blocks;
  std::vector<char> seen(g.order());
  for (int x : h.elements) {
    if (seen[x]) continue;
    std::set<int> block;
    for (int a : j.elements)
      for (int b : k.elements) block.insert(g.mul(g.mul(a, x), b));
    for (int y : block) seen[y] = 1;
    blocks.emplace_back(block.begin(), block.end());
  }
  return blocks;
}

int fixed_coset_count(const Group& g, const Subgroup& k, const Subgroup& h) {
  std::set<std::vector<int>> cosets;
  for (int a = 0; a < g.order(); ++a) {
    std::vector<int> c;
    for (int x : h.elements) c.push_back(g.mul(a, x));
    std::sort(c.begin(), c.end());
    cosets.insert(c);
  }
  int count = 0;
  for (const auto& c : cosets) {
    bool fixed = true;
    for (int x : k.elements) {
      std::vector<int> img;
      for (int y : c) img.push_back(g.mul(x, y));
      std::sort(img.begin(), img.end());
      if (img != c) fixed = false;
    }
    count += fixed;
  }
  return count;
}

FullSet full_set(const OrbitCategory& oc, const RealizedSet& a) {
  const GSet v = to_vset(oc, a);
  FullSet f{induce(v, whole_group(oc.group())), {}};
  for (int p = 0; p < f.set.size(); ++p) f.base.push_back(v.size() == 0 ? 0 : p / v.size());
  return f;
}

std::optional<std::vector<int>> point_map(const OrbitCategory& oc, const RealizedSet& a, const RealizedSet& b,
                           const SetMap& f) {
  // Points of the full set of a realized set, described concretely as
  // (orbit index, least element of the coset g R_cls).
  const Group& G = oc.group();
  auto points = [&](const RealizedSet& s) {
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i < static_cast<int>(s.orbits.size()); ++i)
      for (int y : oc.coset_reps(s.orbits[i].cls)) pts.push_back({i, y});
    return pts;
  };
  const auto pa = points(a), pb = points(b);
  std::vector<int> out;
  for (const auto& [i, y] : pa) {
    const int j = f[i].target;
    const int img = oc.coset(b.orbits[j].cls, G.mul(y, f[i].elt));
    const auto it = std::find(pb.begin(), pb.end(), std::pair{j, img});
    if (it == pb.end()) return std::nullopt;
    out.push_back(static_cast<int>(it - pb.begin()));
  }
  // equivariance: g.(i, y) = (i, gy)
  for (int g = 0; g < G.order(); ++g)
    for (std::size_t p = 0; p < pa.size(); ++p) {
      const auto [i, y] = pa[p];
      const std::pair<int, int> gp{i, oc.coset(a.orbits[i].cls, G.mul(g, y))};
      const int q = static_cast<int>(std::find(pa.begin(), pa.end(), gp) - pa.begin());
      const auto [j, z] = pb[out[p]];
      const std::pair<int, int> gq{j, oc.coset(b.orbits[j].cls, G.mul(g, z))};
      if (pb[out[q]] != gq) return std::nullopt;
    }
  return out;
}

}  // namespace oracle

namespace oracle {

bool is_weak_indexing(const OrbitCategory& oc, int bound, const Family& f) {
  auto admissible = [&](const LevelSet& s) { return f[s.level].count(s.counts) > 0; };
  for (int h = 0; h < oc.num_levels(); ++h) {
    if (!f[h].empty() && !admissible(point(oc, h))) return false;
    for (const auto& counts : f[h]) {
      const RealizedSet s = realize(oc, LevelSet{h, counts});
      for (int m : oc.morphisms_into(h))
        if (!admissible(iso_class(oc, restrict_along(oc, s, m).set))) return false;
      // every choice of admissible parts over the orbits of s
      std::vector<RealizedSet> parts(s.orbits.size());
      bool ok = true;
      auto rec = [&](auto&& self, std::size_t i, int card) -> void {
        if (!ok) return;
        if (i == s.orbits.size()) {
          const LevelSet total = iso_class(oc, indexed_coproduct(oc, s, parts).set);
          if (!admissible(total)) ok = false;
          return;
        }
        const int k = s.orbits[i].cls;
        const int size = oc.level_order(h) / oc.level_order(k);
        for (const auto& c : f[k]) {
          const int more = size * cardinality(oc, LevelSet{k, c});
          if (card + more > bound) continue;
          parts[i] = realize(oc, LevelSet{k, c});
          self(self, i + 1, card + more);
        }
      };
      rec(rec, 0, 0);
      if (!ok) return false;
    }
  }
  return true;
}

std::vector<std::set<std::pair<int, int>>> transfer_systems(const OrbitCategory& oc) {
  const Group& G = oc.group();
  const auto& subs = oc.lattice().subgroups();
  const int n = static_cast<int>(subs.size());
  auto index = [&](const Subgroup& s) { return static_cast<int>(std::find(subs.begin(), subs.end(), s) - subs.begin()); };
  // proper inclusions grouped into conjugation orbits
  std::map<std::pair<int, int>, int> orbit_of;
  std::vector<std::vector<std::pair<int, int>>> orbits;
  for (int k = 0; k < n; ++k)
    for (int h = 0; h < n; ++h) {
      if (k == h || !subs[h].includes(subs[k]) || orbit_of.count({k, h})) continue;
      orbits.emplace_back();
      for (int a = 0; a < G.order(); ++a) {
        const std::pair<int, int> p{index(conjugate_subgroup(G, subs[k], a)), index(conjugate_subgroup(G, subs[h], a))};
        if (!orbit_of.count(p)) {
          orbit_of[p] = static_cast<int>(orbits.size()) - 1;
          orbits.back().push_back(p);
        }
      }
    }
  const int m = static_cast<int>(orbits.size());
  std::vector<std::set<std::pair<int, int>>> out;
  for (long mask = 0; mask < (1L << m); ++mask) {
    std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) rel[i][i] = 1;
    for (int o = 0; o < m; ++o)
      if (mask >> o & 1)
        for (const auto& [k, h] : orbits[o]) rel[k][h] = 1;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k)
      for (int h = 0; h < n && ok; ++h) {
        if (!rel[k][h]) continue;
        for (int j = 0; j < n && ok; ++j)
          if (rel[h][j] && !rel[k][j]) ok = false;
        for (int l = 0; l < n && ok; ++l)
          if (subs[h].includes(subs[l]) && !rel[index(intersect(subs[k], subs[l]))][l]) ok = false;
      }
    if (!ok) continue;
    std::set<std::pair<int, int>> adm;
    for (int h = 0; h < oc.num_levels(); ++h) {
      const auto& loc = oc.local_lattice(h);
      for (int t = 0; t < loc.num_classes(); ++t)
        if (t != oc.point_type(h) && rel[index(loc.class_rep(t))][index(oc.rep(h))]) adm.insert({h, t});
    }
    out.push_back(adm);
  }
  return out;
}

GMap map_to_orbit(const OrbitCategory& oc, const LevelSet& s) {
  const FullSet full = full_set(oc, realize(oc, s));
  GSet orbit = coset_set(oc.group_ptr(), whole_group(oc.group()), oc.rep(s.level));
  return GMap{full.set, orbit, full.base};
}

Limit coefficient_limit(const OrbitCategory& oc, const std::vector<CoeffSystem>& xs, const RealizedSet& s, int l,
                        int phi) {
  Limit lim;
  std::vector<int> to_level;
  for (const auto& o : s.orbits) to_level.push_back(oc.find_morphism(o.cls, s.level, o.elt));
  for (int c = 0; c < oc.num_levels(); ++c)
    for (int g : oc.morphisms_between(c, l))
      for (int i = 0; i < static_cast<int>(s.orbits.size()); ++i)
        for (int m : oc.morphisms_between(c, s.orbits[i].cls))
          if (oc.compose(phi, g) == oc.compose(to_level[i], m)) lim.objects.push_back({c, g, i, m});
  const int n = static_cast<int>(lim.objects.size());
  std::map<std::tuple<int, int, int, int>, int> where;
  for (int a = 0; a < n; ++a) {
    const auto& o = lim.objects[a];
    where[{o.c, o.g, o.i, o.s}] = a;
  }
  // Larger stabilizers first; every constraint b = X(u)(a) is checked once both are set.
  std::vector<int> order(n);
  for (int a = 0; a < n; ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return oc.level_order(lim.objects[a].c) > oc.level_order(lim.objects[b].c);
  });
  std::vector<int> rank(n);
  for (int p = 0; p < n; ++p) rank[order[p]] = p;
  struct Edge {
    int from, u;
  };
  std::vector<std::vector<Edge>> incoming(n);  // constraints checked when the later object is set
  std::vector<std::vector<std::pair<int, int>>> outgoing(n);
  for (int a = 0; a < n; ++a) {
    const auto& o = lim.objects[a];
    for (int u : oc.morphisms_into(o.c)) {
      const int c2 = oc.morphism(u).src;
      const int b = where.at({c2, oc.compose(o.g, u), o.i, oc.compose(o.s, u)});
      if (rank[a] <= rank[b])
        incoming[b].push_back({a, u});
      else
        outgoing[a].push_back({b, u});
    }
  }
  std::vector<int> value(n, -1);
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      lim.families.push_back(value);
      return;
    }
    const int b = order[p];
    const auto& x = xs[lim.objects[b].i];
    for (int v = 0; v < x.size(lim.objects[b].c); ++v) {
      bool ok = true;
      for (const auto& e : incoming[b])
        if (x.restrict(e.u, e.from == b ? v : value[e.from]) != v) ok = false;
      for (const auto& [a, u] : outgoing[b])
        if (x.restrict(u, v) != value[a]) ok = false;
      if (!ok) continue;
      value[b] = v;
      rec(p + 1);
      value[b] = -1;
    }
  };
  rec(0);
  return lim;
}

std::vector<int> restrict_family(const OrbitCategory& oc, const Limit& from, const Limit& to, int m,
                                 const std::vector<int>& family) {
  std::map<std::tuple<int, int, int, int>, int> where;
  for (std::size_t a = 0; a < from.objects.size(); ++a) {
    const auto& o = from.objects[a];
    where[{o.c, o.g, o.i, o.s}] = static_cast<int>(a);
  }
  std::vector<int> out;
  for (const auto& o : to.objects) out.push_back(family[where.at({o.c, oc.compose(m, o.g), o.i, o.s})]);
  return out;
}

}  // namespace oracle
