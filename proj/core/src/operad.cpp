#include "eqv/operad.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "eqv/error.hpp"
#include "operad_detail.hpp"

namespace eqv {

// ---- profile space ----

ProfileSpace::ProfileSpace(OrbitCategoryPtr oc, CoeffSystem colors, int bound)
    : oc_(std::move(oc)), colors_(std::move(colors)), bound_(bound) {
  if (bound_ < 0) throw InvalidArgument("arity bound must be nonnegative");
  if (colors_.category().num_morphisms() != oc_->num_morphisms())
    throw InvalidArgument("colors live over another orbit category");
  const OrbitCategory& oc_ref = *oc_;
  const int levels = oc_ref.num_levels();
  at_level_.assign(levels, {});
  by_output_.resize(levels);
  for (int h = 0; h < levels; ++h) by_output_[h].assign(colors_.size(h), {});
  for (int h = 0; h < levels; ++h) {
    for (const LevelSet& s : enumerate_sets(oc_ref, h, bound_)) {
      SetData d;
      d.set = realize(oc_ref, s);
      d.autos = eqv::automorphisms(oc_ref, d.set);
      for (int a = 0; a < static_cast<int>(d.autos.size()); ++a) d.index.emplace(d.autos[a], a);
      const int sid = static_cast<int>(sets_.size());
      set_index_.emplace(s, sid);
      std::vector<int> radix;
      bool empty = colors_.size(h) == 0;
      for (const auto& o : d.set.orbits) {
        radix.push_back(colors_.size(o.cls));
        if (radix.back() == 0) empty = true;
      }
      sets_.push_back(std::move(d));
      if (empty) continue;
      std::vector<int> c(radix.size(), 0);
      while (true) {
        for (int out = 0; out < colors_.size(h); ++out) {
          const int id = static_cast<int>(profiles_.size());
          profiles_.push_back({h, s, c, out});
          profile_index_.emplace(profiles_.back(), id);
          set_of_.push_back(sid);
          at_level_[h].push_back(id);
          by_output_[h][out].push_back(id);
        }
        int pos = static_cast<int>(c.size()) - 1;
        while (pos >= 0 && ++c[pos] == radix[pos]) c[pos--] = 0;
        if (pos < 0) break;
      }
    }
  }
  act_.resize(profiles_.size());
  for (int id = 0; id < num_profiles(); ++id) {
    const Profile& p = profiles_[id];
    const RealizedSet& s = canonical_set(id);
    for (const SetMap& sigma : automorphisms(id)) {
      Profile q = p;
      for (std::size_t i = 0; i < s.orbits.size(); ++i) {
        const int j = sigma[i].target;
        const int m = oc_ref.find_morphism(s.orbits[i].cls, s.orbits[j].cls, sigma[i].elt);
        q.colors[i] = colors_.restrict(m, p.colors[j]);
      }
      act_[id].push_back(find(q));
    }
  }
}

int ProfileSpace::find(const Profile& p) const {
  const auto it = profile_index_.find(p);
  return it == profile_index_.end() ? -1 : it->second;
}

int ProfileSpace::point_profile(int level, int color) const {
  return find({level, point(*oc_, level), {color}, color});
}

int ProfileSpace::aut_index(int id, const SetMap& s) const {
  const auto& idx = sets_[set_of_[id]].index;
  const auto it = idx.find(s);
  return it == idx.end() ? -1 : it->second;
}

Framed ProfileSpace::framed(int id) const {
  return {canonical_set(id), profiles_[id].colors, profiles_[id].out};
}

Located ProfileSpace::locate(const Framed& f) const {
  const OrbitCategory& oc = *oc_;
  Located l;
  if (cardinality(oc, f.set) > bound_) return l;
  Canonical c = canonicalize(oc, f.set);
  const SetMap psi = inverse(oc, c.to_canonical, f.set, c.set);
  Profile p{f.set.level, c.iso, std::vector<int>(c.set.orbits.size()), f.out};
  for (std::size_t j = 0; j < c.set.orbits.size(); ++j) {
    const int i = psi[j].target;
    const int m = oc.find_morphism(c.set.orbits[j].cls, f.set.orbits[i].cls, psi[j].elt);
    p.colors[j] = colors_.restrict(m, f.colors[i]);
  }
  l.profile = find(p);
  l.to_canonical = std::move(c.to_canonical);
  return l;
}

Framed ProfileSpace::restricted(int morphism, int id, SetMap* projection) const {
  const OrbitCategory& oc = *oc_;
  const Profile& p = profiles_[id];
  if (oc.morphism(morphism).tgt != p.level) throw InvalidArgument("restriction along a morphism into another level");
  const RealizedSet& s = canonical_set(id);
  Restricted r = restrict_along(oc, s, morphism);
  Framed f{r.set, {}, colors_.restrict(morphism, p.out)};
  for (std::size_t i = 0; i < r.set.orbits.size(); ++i) {
    const int q = r.projection[i].target;
    const int m = oc.find_morphism(r.set.orbits[i].cls, s.orbits[q].cls, r.projection[i].elt);
    f.colors.push_back(colors_.restrict(m, p.colors[q]));
  }
  if (projection) *projection = std::move(r.projection);
  return f;
}

int ProfileSpace::res_target(int morphism, int id) const { return locate(restricted(morphism, id)).profile; }

Framed ProfileSpace::composite(int id, const std::vector<int>& qs, Coproduct* cp) const {
  const Profile& p = profiles_[id];
  const RealizedSet& s = canonical_set(id);
  if (qs.size() != s.orbits.size()) throw InvalidArgument("one input profile per orbit required");
  std::vector<RealizedSet> parts;
  Framed f{{}, {}, p.out};
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const Profile& q = profiles_.at(qs[i]);
    if (q.level != s.orbits[i].cls || q.out != p.colors[i])
      throw InvalidArgument("input profile does not match its orbit");
    parts.push_back(canonical_set(qs[i]));
    f.colors.insert(f.colors.end(), q.colors.begin(), q.colors.end());
  }
  Coproduct c = indexed_coproduct(*oc_, s, parts);
  f.set = c.set;
  if (cp) *cp = std::move(c);
  return f;
}

int ProfileSpace::composite_cardinality(int id, const std::vector<int>& qs) const {
  const RealizedSet& s = canonical_set(id);
  const int v = oc_->level_order(s.level);
  int total = 0;
  for (std::size_t i = 0; i < qs.size(); ++i)
    total += v / oc_->level_order(s.orbits[i].cls) * cardinality(*oc_, profiles_[qs[i]].set);
  return total;
}

int ProfileSpace::gamma_target(int id, const std::vector<int>& qs) const {
  if (composite_cardinality(id, qs) > bound_) return -1;
  return locate(composite(id, qs)).profile;
}

SetMap ProfileSpace::transport(const Located& l1, const Located& l2, const RealizedSet& f1, const RealizedSet& f2,
                               const SetMap& alpha) const {
  const OrbitCategory& oc = *oc_;
  const RealizedSet& c1 = canonical_set(l1.profile);
  const RealizedSet& c2 = canonical_set(l2.profile);
  const SetMap psi1 = inverse(oc, l1.to_canonical, f1, c1);
  return compose(oc, compose(oc, psi1, alpha, f2), l2.to_canonical, c2);
}

std::string ProfileSpace::describe(int id) const {
  const Profile& p = profiles_[id];
  std::ostringstream out;
  out << "level " << p.level << " set [";
  for (std::size_t t = 0; t < p.set.counts.size(); ++t) out << (t ? "," : "") << p.set.counts[t];
  out << "] colors (";
  for (std::size_t i = 0; i < p.colors.size(); ++i) out << (i ? "," : "") << p.colors[i];
  out << ") -> " << p.out;
  return out.str();
}

// ---- points of realized sets ----

namespace detail {

PointIndex::PointIndex(const OrbitCategory& oc, const RealizedSet& a) : oc_(&oc), set_(a) {
  const Group& G = oc.group();
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    const auto& o = a.orbits[i];
    offset_.push_back(size_);
    std::vector<int> p;
    for (int y : oc.coset_reps(o.cls))
      if (oc.coset(a.level, G.mul(y, o.elt)) == 0) p.push_back(y);
    for (int y : p) {
      orbit_.push_back(static_cast<int>(i));
      rep_.push_back(y);
    }
    size_ += static_cast<int>(p.size());
    reps_.push_back(std::move(p));
  }
}

int PointIndex::index(int orbit, int g) const {
  const auto& r = reps_[orbit];
  const int c = oc_->coset(set_.orbits[orbit].cls, g);
  const auto it = std::lower_bound(r.begin(), r.end(), c);
  if (it == r.end() || *it != c) throw InvalidArgument("element does not give a point over the base");
  return offset_[orbit] + static_cast<int>(it - r.begin());
}

std::vector<int> PointIndex::map_points(const SetMap& f, const PointIndex& target) const {
  const Group& G = oc_->group();
  std::vector<int> r(size_);
  for (int p = 0; p < size_; ++p) {
    const auto& img = f[orbit_[p]];
    r[p] = target.index(img.target, G.mul(rep_[p], img.elt));
  }
  return r;
}

int PointIndex::act(int g, int p) const { return index(orbit_[p], oc_->group().mul(g, rep_[p])); }

std::optional<SetMap> match_over(const OrbitCategory& oc, const RealizedSet& a, const SetMap& fa,
                                 const RealizedSet& b, const SetMap& fb, const RealizedSet& l) {
  if (a.level != b.level || a.orbits.size() != b.orbits.size()) return std::nullopt;
  const Group& G = oc.group();
  const int n = static_cast<int>(a.orbits.size());
  SetMap alpha(n);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int i) {
    if (i == n) return true;
    const auto& oa = a.orbits[i];
    const int p = fa[i].target;
    const int cp = l.orbits[p].cls;
    for (int j = 0; j < n; ++j) {
      if (used[j] || b.orbits[j].cls != oa.cls || fb[j].target != p) continue;
      for (int d : oc.normalizer(oa.cls)) {
        if (oc.coset(oa.cls, d) != d) continue;
        if (oc.coset(a.level, G.mul(d, b.orbits[j].elt)) != oc.coset(a.level, oa.elt)) continue;
        if (oc.coset(cp, G.mul(d, fb[j].elt)) != oc.coset(cp, fa[i].elt)) continue;
        used[j] = 1;
        alpha[i] = {j, d};
        if (rec(i + 1)) return true;
        used[j] = 0;
      }
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return alpha;
}

}  // namespace detail

// ---- tabulated operads ----

TabulatedOperad::TabulatedOperad(ProfileSpacePtr space) : DiscreteOperad(std::move(space)) {
  const ProfileSpace& sp = this->space();
  const OrbitCategory& oc = sp.category();
  sizes_.assign(sp.num_profiles(), 0);
  identities_.resize(oc.num_levels());
  for (int h = 0; h < oc.num_levels(); ++h) identities_[h].assign(sp.colors().size(h), 0);
  rho_.resize(sp.num_profiles());
  for (int p = 0; p < sp.num_profiles(); ++p) rho_[p].assign(sp.automorphisms(p).size(), {});
  res_.resize(oc.num_morphisms());
  for (int m = 0; m < oc.num_morphisms(); ++m) res_[m].assign(sp.num_profiles(), {});
}

std::size_t TabulatedOperad::gamma_offset(int profile, int x, const std::vector<int>& qs,
                                          const std::vector<int>& ys) const {
  std::size_t off = static_cast<std::size_t>(x);
  for (std::size_t i = 0; i < qs.size(); ++i) off = off * static_cast<std::size_t>(sizes_[qs[i]]) + ys[i];
  (void)profile;
  return off;
}

int TabulatedOperad::gamma(int profile, int x, const std::vector<int>& qs, const std::vector<int>& ys) const {
  const auto it = gamma_.find({profile, qs});
  if (it == gamma_.end()) throw InvalidArgument("no composition entry for these profiles");
  return it->second.at(gamma_offset(profile, x, qs, ys));
}

namespace detail {

void for_each_composable(const DiscreteOperad& o, int profile,
                         const std::function<bool(const std::vector<int>&)>& visit, std::size_t* out_of_bound) {
  const ProfileSpace& sp = o.space();
  const OrbitCategory& oc = sp.category();
  const Profile& p = sp.profile(profile);
  const RealizedSet& s = sp.canonical_set(profile);
  const int n = static_cast<int>(s.orbits.size());
  const int v = oc.level_order(s.level);
  std::vector<std::vector<int>> cand(n);
  std::vector<int> weight(n);
  for (int i = 0; i < n; ++i) {
    weight[i] = v / oc.level_order(s.orbits[i].cls);
    for (int q : sp.profiles_with_output(s.orbits[i].cls, p.colors[i]))
      if (o.size(q) > 0) cand[i].push_back(q);
  }
  std::vector<std::size_t> tail(n + 1, 1);
  for (int i = n - 1; i >= 0; --i) {
    const std::size_t c = cand[i].size();
    tail[i] = c != 0 && tail[i + 1] > SIZE_MAX / c ? SIZE_MAX : tail[i + 1] * c;
  }
  std::vector<int> qs(n);
  bool stop = false;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (stop) return;
    if (i == n) {
      if (!visit(qs)) stop = true;
      return;
    }
    for (int q : cand[i]) {
      const int next = used + weight[i] * cardinality(oc, sp.profile(q).set);
      if (next > sp.bound()) {
        if (out_of_bound) *out_of_bound += tail[i + 1];
        continue;
      }
      qs[i] = q;
      rec(i + 1, next);
      if (stop) return;
    }
  };
  rec(0, 0);
}

}  // namespace detail

std::shared_ptr<TabulatedOperad> tabulate(const DiscreteOperad& o, std::size_t cap) {
  auto t = std::make_shared<TabulatedOperad>(o.space_ptr());
  const ProfileSpace& sp = o.space();
  const OrbitCategory& oc = sp.category();
  std::size_t entries = 0;
  auto charge = [&](std::size_t n) {
    entries += n;
    if (entries > cap) throw CapExceeded("tabulated operad exceeds the entry cap");
  };
  for (int p = 0; p < sp.num_profiles(); ++p) t->sizes()[p] = o.size(p);
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int c = 0; c < sp.colors().size(h); ++c) {
      const int pp = sp.point_profile(h, c);
      t->identities()[h][c] = pp >= 0 && o.size(pp) > 0 ? o.identity(h, c) : 0;
    }
  for (int p = 0; p < sp.num_profiles(); ++p) {
    const int n = o.size(p);
    for (std::size_t a = 0; a < sp.automorphisms(p).size(); ++a) {
      charge(n);
      auto& row = t->rho_table()[p][a];
      row.resize(n);
      for (int x = 0; x < n; ++x) row[x] = o.rho(p, static_cast<int>(a), x);
    }
  }
  for (int m = 0; m < oc.num_morphisms(); ++m)
    for (int p : sp.profiles_at(oc.morphism(m).tgt)) {
      const int n = o.size(p);
      charge(n);
      auto& row = t->res_table()[m][p];
      row.resize(n);
      for (int x = 0; x < n; ++x) row[x] = o.res(m, p, x);
    }
  for (int p = 0; p < sp.num_profiles(); ++p) {
    if (o.size(p) == 0) continue;
    detail::for_each_composable(
        o, p,
        [&](const std::vector<int>& qs) {
          std::vector<int> radix{o.size(p)};
          std::size_t total = o.size(p);
          for (int q : qs) {
            radix.push_back(o.size(q));
            total *= static_cast<std::size_t>(o.size(q));
          }
          charge(total);
          std::vector<int> vals(total);
          std::vector<int> digits(radix.size(), 0);
          std::vector<int> ys(qs.size());
          for (std::size_t k = 0; k < total; ++k) {
            std::copy(digits.begin() + 1, digits.end(), ys.begin());
            vals[k] = o.gamma(p, digits[0], qs, ys);
            for (int pos = static_cast<int>(digits.size()) - 1; pos >= 0; --pos) {
              if (++digits[pos] < radix[pos]) break;
              digits[pos] = 0;
            }
          }
          t->gamma_table().emplace(std::make_pair(p, qs), std::move(vals));
          return true;
        },
        nullptr);
  }
  return t;
}

// ---- N-infinity, trivial and endomorphism operads ----

CoeffSystem color_system(const WeakIndexingSystem& w) {
  const OrbitCategoryPtr& oc = w.universe().category_ptr();
  std::vector<int> sizes(oc->num_levels());
  for (int h = 0; h < oc->num_levels(); ++h) sizes[h] = w.contains(point(*oc, h)) ? 1 : 0;
  std::vector<std::vector<int>> res(oc->num_morphisms());
  for (int m = 0; m < oc->num_morphisms(); ++m) {
    const auto& mor = oc->morphism(m);
    if (sizes[mor.tgt] == 0) continue;
    if (sizes[mor.src] == 0) throw InvalidArgument("colored levels are not closed under restriction");
    res[m] = {0};
  }
  return CoeffSystem(oc, std::move(sizes), std::move(res));
}

namespace {

class NinftyOperad : public DiscreteOperad {
 public:
  NinftyOperad(ProfileSpacePtr sp, WeakIndexingSystem w) : DiscreteOperad(std::move(sp)), w_(std::move(w)) {
    for (int p = 0; p < space().num_profiles(); ++p) sizes_.push_back(w_.contains(space().profile(p).set) ? 1 : 0);
  }
  int size(int p) const override { return sizes_[p]; }
  int identity(int, int) const override { return 0; }
  int rho(int, int, int) const override { return 0; }
  int res(int, int, int) const override { return 0; }
  int gamma(int, int, const std::vector<int>&, const std::vector<int>&) const override { return 0; }

 private:
  WeakIndexingSystem w_;
  std::vector<int> sizes_;
};

class TrivOperad : public DiscreteOperad {
 public:
  explicit TrivOperad(ProfileSpacePtr sp) : DiscreteOperad(std::move(sp)) {
    const OrbitCategory& oc = space().category();
    for (int p = 0; p < space().num_profiles(); ++p) {
      const Profile& pr = space().profile(p);
      sizes_.push_back(pr.set == point(oc, pr.level) && pr.colors[0] == pr.out ? 1 : 0);
    }
  }
  int size(int p) const override { return sizes_[p]; }
  int identity(int, int) const override { return 0; }
  int rho(int, int, int) const override { return 0; }
  int res(int, int, int) const override { return 0; }
  int gamma(int, int, const std::vector<int>&, const std::vector<int>&) const override { return 0; }

 private:
  std::vector<int> sizes_;
};

constexpr std::int64_t kEndDomainCap = 1 << 20;

// O(S) for End_Y: V-maps Map(S, Y) -> Y, stored by their values on orbit
// representatives of Map(S, Y).
struct EndData {
  explicit EndData(detail::PointIndex p) : pts(std::move(p)) {}
  detail::PointIndex pts;
  int q = 0;
  std::int64_t dom = 0;
  std::vector<int> rep_of;      // per function code
  std::vector<int> translator;  // per function code: g with g * rep = code
  std::vector<std::int64_t> rep_code;
  std::vector<std::vector<int>> choices;  // fixed points of each rep's stabilizer
  std::vector<std::int64_t> radix;
  int count = 0;

  std::int64_t code(const std::vector<int>& f) const {
    std::int64_t c = 0;
    for (int s = pts.size() - 1; s >= 0; --s) c = c * q + f[s];
    return c;
  }
  std::vector<int> decode(std::int64_t c) const {
    std::vector<int> f(pts.size());
    for (int s = 0; s < pts.size(); ++s) {
      f[s] = static_cast<int>(c % q);
      c /= q;
    }
    return f;
  }
  int digit(int x, int r) const { return static_cast<int>(x / radix[r] % static_cast<std::int64_t>(choices[r].size())); }
  int eval(const GSet& y, int x, std::int64_t c) const {
    const int r = rep_of[c];
    return y.act(translator[c], choices[r][digit(x, r)]);
  }
  int encode(const std::vector<int>& values) const {
    std::int64_t x = 0;
    for (std::size_t r = 0; r < values.size(); ++r) {
      const auto& ch = choices[r];
      const auto it = std::find(ch.begin(), ch.end(), values[r]);
      if (it == ch.end()) throw InvalidArgument("value is not fixed by the stabilizer");
      x += (it - ch.begin()) * radix[r];
    }
    return static_cast<int>(x);
  }
};

class EndOperad : public DiscreteOperad {
 public:
  EndOperad(ProfileSpacePtr sp, GSet y) : DiscreteOperad(std::move(sp)), y_(std::move(y)) {
    for (int p = 0; p < space().num_profiles(); ++p) data_.push_back(build(space().canonical_set(p)));
  }

  int size(int p) const override { return data_[p].count; }

  int identity(int level, int) const override {
    const EndData& d = data_[space().point_profile(level, 0)];
    std::vector<int> vals;
    for (std::int64_t c : d.rep_code) vals.push_back(d.decode(c)[0]);
    return d.encode(vals);
  }

  int rho(int p, int aut, int x) const override {
    const EndData& d = data_[p];
    const std::vector<int> sigma = d.pts.map_points(space().automorphisms(p)[aut], d.pts);
    std::vector<int> vals;
    std::vector<int> f(d.pts.size());
    for (std::int64_t c : d.rep_code) {
      const std::vector<int> g = d.decode(c);
      for (int s = 0; s < d.pts.size(); ++s) f[sigma[s]] = g[s];
      vals.push_back(d.eval(y_, x, d.code(f)));
    }
    return d.encode(vals);
  }

  int res(int m, int p, int x) const override {
    const ProfileSpace& sp = space();
    const OrbitCategory& oc = sp.category();
    const Group& G = oc.group();
    SetMap proj;
    const Framed r = sp.restricted(m, p, &proj);
    const Located l = sp.locate(r);
    const EndData& dc = data_[l.profile];
    const EndData& ds = data_[p];
    const detail::PointIndex rp(oc, r.set);
    const std::vector<int> phi = rp.map_points(l.to_canonical, dc.pts);
    const int c = oc.morphism(m).elt, ci = G.inv(c);
    std::vector<int> target(rp.size());
    for (int pt = 0; pt < rp.size(); ++pt) {
      const auto& img = proj[rp.orbit(pt)];
      target[pt] = ds.pts.index(img.target, G.mul(G.mul(ci, rp.rep(pt)), img.elt));
    }
    std::vector<int> vals;
    std::vector<int> f(ds.pts.size());
    for (std::int64_t code : dc.rep_code) {
      const std::vector<int> g = dc.decode(code);
      for (int pt = 0; pt < rp.size(); ++pt) f[target[pt]] = y_.act(ci, g[phi[pt]]);
      vals.push_back(y_.act(c, ds.eval(y_, x, ds.code(f))));
    }
    return dc.encode(vals);
  }

  int gamma(int p, int x, const std::vector<int>& qs, const std::vector<int>& ys) const override {
    const ProfileSpace& sp = space();
    const OrbitCategory& oc = sp.category();
    const Group& G = oc.group();
    Coproduct cp;
    const Framed a = sp.composite(p, qs, &cp);
    const Located l = sp.locate(a);
    if (l.profile < 0) throw InvalidArgument("composite exceeds the arity bound");
    const EndData& dc = data_[l.profile];
    const EndData& ds = data_[p];
    const detail::PointIndex ap(oc, a.set);
    const std::vector<int> phi = ap.map_points(l.to_canonical, dc.pts);
    // For each point y * x_i of S and point z * x_o of T_i: the point of A.
    std::vector<std::vector<int>> fiber(ds.pts.size());
    for (int s = 0; s < ds.pts.size(); ++s) {
      const int i = ds.pts.orbit(s), y = ds.pts.rep(s);
      const EndData& dt = data_[qs[i]];
      for (int t = 0; t < dt.pts.size(); ++t)
        fiber[s].push_back(ap.index(cp.offsets[i] + dt.pts.orbit(t), G.mul(y, dt.pts.rep(t))));
    }
    std::vector<int> vals;
    std::vector<int> fs(ds.pts.size());
    for (std::int64_t code : dc.rep_code) {
      const std::vector<int> g = dc.decode(code);
      for (int s = 0; s < ds.pts.size(); ++s) {
        const int i = ds.pts.orbit(s), y = ds.pts.rep(s), yi = G.inv(y);
        const EndData& dt = data_[qs[i]];
        std::vector<int> ft(dt.pts.size());
        for (int t = 0; t < dt.pts.size(); ++t) ft[t] = y_.act(yi, g[phi[fiber[s][t]]]);
        fs[s] = y_.act(y, dt.eval(y_, ys[i], dt.code(ft)));
      }
      vals.push_back(ds.eval(y_, x, ds.code(fs)));
    }
    return dc.encode(vals);
  }

 private:
  EndData build(const RealizedSet& s) const {
    const OrbitCategory& oc = space().category();
    const Subgroup& v = oc.rep(s.level);
    EndData d(detail::PointIndex(oc, s));
    d.q = y_.size();
    const int n = d.pts.size();
    d.dom = 1;
    for (int i = 0; i < n; ++i) {
      d.dom *= d.q;
      if (d.dom > kEndDomainCap) throw CapExceeded("too many functions into the endomorphism set");
    }
    std::vector<std::vector<int>> pact;
    for (int g : v.elements) {
      std::vector<int> row(n);
      for (int pt = 0; pt < n; ++pt) row[pt] = d.pts.act(g, pt);
      pact.push_back(std::move(row));
    }
    auto act_code = [&](std::size_t gi, std::int64_t c) {
      const int g = v.elements[gi];
      const std::vector<int> f = d.decode(c);
      std::vector<int> out(n);
      for (int pt = 0; pt < n; ++pt) out[pact[gi][pt]] = y_.act(g, f[pt]);
      return d.code(out);
    };
    d.rep_of.assign(d.dom, -1);
    d.translator.assign(d.dom, 0);
    double count = 1;
    for (std::int64_t c = 0; c < d.dom; ++c) {
      if (d.rep_of[c] >= 0) continue;
      const int r = static_cast<int>(d.rep_code.size());
      d.rep_code.push_back(c);
      std::vector<int> stab;
      for (std::size_t gi = 0; gi < v.elements.size(); ++gi) {
        const std::int64_t img = act_code(gi, c);
        if (img == c) stab.push_back(v.elements[gi]);
        if (d.rep_of[img] < 0) {
          d.rep_of[img] = r;
          d.translator[img] = v.elements[gi];
        }
      }
      std::vector<int> fixed;
      for (int pt = 0; pt < d.q; ++pt)
        if (std::all_of(stab.begin(), stab.end(), [&](int g) { return y_.act(g, pt) == pt; })) fixed.push_back(pt);
      count *= static_cast<double>(fixed.size());
      d.choices.push_back(std::move(fixed));
    }
    if (count > static_cast<double>(INT_MAX)) throw CapExceeded("endomorphism structure set too large");
    d.count = static_cast<int>(count);
    std::int64_t r = 1;
    for (const auto& ch : d.choices) {
      d.radix.push_back(r);
      r *= std::max<std::int64_t>(1, static_cast<std::int64_t>(ch.size()));
    }
    return d;
  }

  GSet y_;
  std::vector<EndData> data_;
};

class BorelOperad : public DiscreteOperad {
 public:
  BorelOperad(ProfileSpacePtr sp, OperadPtr inner, WeakIndexingSystem w)
      : DiscreteOperad(std::move(sp)), inner_(std::move(inner)), w_(std::move(w)) {
    for (int p = 0; p < space().num_profiles(); ++p) {
      const Profile& pr = space().profile(p);
      const int id = inner_->space().find(pr);
      if (id < 0) throw InvalidArgument("profile missing from the underlying operad");
      orig_.push_back(id);
      sizes_.push_back(w_.contains(pr.set) ? inner_->size(id) : 0);
    }
  }
  int size(int p) const override { return sizes_[p]; }
  int identity(int level, int color) const override { return inner_->identity(level, color); }
  int rho(int p, int aut, int x) const override { return inner_->rho(orig_[p], aut, x); }
  int res(int m, int p, int x) const override { return inner_->res(m, orig_[p], x); }
  int gamma(int p, int x, const std::vector<int>& qs, const std::vector<int>& ys) const override {
    std::vector<int> q2;
    for (int q : qs) q2.push_back(orig_[q]);
    return inner_->gamma(orig_[p], x, q2, ys);
  }

 private:
  OperadPtr inner_;
  WeakIndexingSystem w_;
  std::vector<int> orig_;
  std::vector<int> sizes_;
};


class RestrictedOperad : public DiscreteOperad {
 public:
  RestrictedOperad(ProfileSpacePtr sp, OperadPtr inner, std::shared_ptr<const SubgroupEmbedding> e)
      : DiscreteOperad(std::move(sp)), inner_(std::move(inner)), e_(std::move(e)) {
    const ProfileSpace& gs = inner_->space();
    for (int p = 0; p < space().num_profiles(); ++p) {
      const Framed f = space().framed(p);
      sets_.push_back(e_->set(f.set));
      loc_.push_back(gs.locate({sets_.back(), f.colors, f.out}));
      if (loc_.back().profile < 0) throw InvalidArgument("restricted profile missing from the operad");
    }
  }

  int size(int p) const override { return inner_->size(loc_[p].profile); }
  int identity(int level, int color) const override { return inner_->identity(e_->level(level), color); }

  int rho(int p, int aut, int x) const override {
    const SetMap sigma = e_->map(space().automorphisms(p)[aut], space().canonical_set(p), space().canonical_set(p));
    const int q = space().act(p, aut);
    return carry(loc_[q], sets_[p], loc_[p], sets_[p], sigma, x);
  }

  int res(int m, int p, int x) const override {
    const ProfileSpace& hs = space();
    const ProfileSpace& gs = inner_->space();
    const OrbitCategory& goc = gs.category();
    SetMap ph;
    const Framed rh = hs.restricted(m, p, &ph);
    const Located lh = hs.locate(rh);
    const int q = lh.profile;
    const SetMap to_p = compose(hs.category(), inverse(hs.category(), lh.to_canonical, rh.set, hs.canonical_set(q)), ph,
                                hs.canonical_set(p));
    const int pg = loc_[p].profile;
    const SetMap map1 = compose(goc, e_->map(to_p, hs.canonical_set(q), hs.canonical_set(p)), loc_[p].to_canonical,
                                gs.canonical_set(pg));
    const int mg = e_->morphism(m);
    SetMap pg_proj;
    const Framed rg = gs.restricted(mg, pg, &pg_proj);
    const auto alpha = detail::match_over(goc, sets_[q], map1, rg.set, pg_proj, gs.canonical_set(pg));
    if (!alpha) throw std::logic_error("restricted sets are not isomorphic over the base");
    return carry(loc_[q], sets_[q], gs.locate(rg), rg.set, *alpha, inner_->res(mg, pg, x));
  }

  int gamma(int p, int x, const std::vector<int>& qs, const std::vector<int>& ys) const override {
    const ProfileSpace& hs = space();
    const ProfileSpace& gs = inner_->space();
    const OrbitCategory& goc = gs.category();
    const Group& G = goc.group();
    const int pg = loc_[p].profile;
    const RealizedSet& sg = gs.canonical_set(pg);
    Coproduct cph;
    const Framed ah = hs.composite(p, qs, &cph);
    const Located la = hs.locate(ah);
    const int z = la.profile;
    if (z < 0) throw InvalidArgument("composite exceeds the arity bound");
    const SetMap ta = e_->map(la.to_canonical, ah.set, hs.canonical_set(z));
    const int n = static_cast<int>(qs.size());
    std::vector<int> qg(n), yg(n), from(n);
    std::vector<SetMap> chain(n);  // canonical G input at j -> T(A_H)
    for (int i = 0; i < n; ++i) {
      const int j = loc_[p].to_canonical[i].target;
      const int c = sg.orbits[j].cls;
      const int nu = goc.find_morphism(c, c, goc.coset(c, G.inv(loc_[p].to_canonical[i].elt)));
      const int qi = loc_[qs[i]].profile;
      SetMap pn;
      const Framed rn = gs.restricted(nu, qi, &pn);
      const Located ln = gs.locate(rn);
      qg[j] = ln.profile;
      yg[j] = inner_->res(nu, qi, ys[i]);
      from[j] = i;
      const SetMap to_q = compose(goc, inverse(goc, ln.to_canonical, rn.set, gs.canonical_set(ln.profile)), pn,
                                  gs.canonical_set(qi));
      const SetMap back = inverse(goc, loc_[qs[i]].to_canonical, sets_[qs[i]], gs.canonical_set(qi));
      SetMap c2 = compose(goc, to_q, back, sets_[qs[i]]);
      for (auto& e : c2) e.target += cph.offsets[i];
      chain[j] = std::move(c2);
    }
    Coproduct cpg;
    const Framed fg = gs.composite(pg, qg, &cpg);
    SetMap m;
    const RealizedSet& tz = sets_[z];
    for (int j = 0; j < n; ++j)
      for (const auto& e : chain[j]) {
        const auto& e3 = ta[e.target];
        m.push_back({e3.target, goc.coset(tz.orbits[e3.target].cls, G.mul(e.elt, e3.elt))});
      }
    const SetMap alpha = inverse(goc, m, fg.set, tz);
    return carry(loc_[z], tz, gs.locate(fg), fg.set, alpha, inner_->gamma(pg, x, qg, yg));
  }

 private:
  // Element at l1 corresponding to x2 at l2 along alpha: f1 -> f2.
  int carry(const Located& l1, const RealizedSet& f1, const Located& l2, const RealizedSet& f2, const SetMap& alpha,
            int x2) const {
    const ProfileSpace& gs = inner_->space();
    const int a = gs.aut_index(l2.profile, gs.transport(l1, l2, f1, f2, alpha));
    if (a < 0) throw std::logic_error("comparison is not an automorphism");
    return inner_->rho(l2.profile, a, x2);
  }

  OperadPtr inner_;
  std::shared_ptr<const SubgroupEmbedding> e_;
  std::vector<RealizedSet> sets_;
  std::vector<Located> loc_;
};
}  // namespace

OperadPtr ninfty(const WeakIndexingSystem& w, int bound) {
  if (bound < 0) bound = w.bound();
  if (bound > w.bound()) throw InvalidArgument("arity bound exceeds the indexing system's bound");
  auto sp = std::make_shared<const ProfileSpace>(w.universe().category_ptr(), color_system(w), bound);
  return std::make_shared<NinftyOperad>(sp, w);
}

OperadPtr comm(OrbitCategoryPtr oc, int bound) {
  return ninfty(complete_system(std::make_shared<const SetUniverse>(std::move(oc), bound)));
}

OperadPtr triv(const CoeffSystem& colors, int bound) {
  return std::make_shared<TrivOperad>(std::make_shared<const ProfileSpace>(colors.category_ptr(), colors, bound));
}

OperadPtr endomorphism_operad(OrbitCategoryPtr oc, const GSet& y, int bound) {
  if (y.acting() != whole_group(oc->group())) throw InvalidArgument("endomorphism set must be a G-set");
  auto sp = std::make_shared<const ProfileSpace>(oc, constant_system(oc, 1), bound);
  return std::make_shared<EndOperad>(sp, y);
}

OperadPtr borelify(const OperadPtr& o, const WeakIndexingSystem& w) {
  const ProfileSpace& sp = o->space();
  const OrbitCategoryPtr& oc = sp.category_ptr();
  const CoeffSystem& c = sp.colors();
  std::vector<int> sizes(oc->num_levels());
  for (int h = 0; h < oc->num_levels(); ++h)
    sizes[h] = w.bound() >= 1 && w.contains(point(*oc, h)) ? c.size(h) : 0;
  std::vector<std::vector<int>> res(oc->num_morphisms());
  for (int m = 0; m < oc->num_morphisms(); ++m)
    if (sizes[oc->morphism(m).tgt] > 0) {
      if (sizes[oc->morphism(m).src] == 0) throw InvalidArgument("colored levels are not closed under restriction");
      res[m] = c.restriction()[m];
    }
  const int bound = std::min(sp.bound(), w.bound());
  auto cut = std::make_shared<const ProfileSpace>(oc, CoeffSystem(oc, sizes, res), bound);
  return std::make_shared<BorelOperad>(cut, o, w);
}


OperadPtr restrict_operad(const OperadPtr& o, std::shared_ptr<const SubgroupEmbedding> e) {
  const ProfileSpace& sp = o->space();
  if (e->ambient()->num_morphisms() != sp.category().num_morphisms())
    throw InvalidArgument("embedding is into another group");
  const OrbitCategoryPtr& sub = e->sub();
  std::vector<int> sizes;
  for (int k = 0; k < sub->num_levels(); ++k) sizes.push_back(sp.colors().size(e->level(k)));
  std::vector<std::vector<int>> res;
  for (int m = 0; m < sub->num_morphisms(); ++m) res.push_back(sp.colors().restriction()[e->morphism(m)]);
  auto hs = std::make_shared<const ProfileSpace>(sub, CoeffSystem(sub, sizes, res), sp.bound());
  return std::make_shared<RestrictedOperad>(hs, o, std::move(e));
}

// ---- validation ----

namespace {

class Checker {
 public:
  Checker(const DiscreteOperad& o, const ValidateOptions& opt)
      : o_(o), sp_(o.space()), oc_(sp_.category()), G_(oc_.group()), opt_(opt), rng_(opt.seed) {}

  OperadReport run() {
    check_identities();
    if (!full()) check_rho();
    if (!full()) check_res();
    if (!full() && units_) check_unit_restriction();
    if (!full() && units_) check_unitality();
    if (!full()) check_composition();
    return r_;
  }

 private:
  bool full() const { return r_.violations.size() >= opt_.max_violations; }
  void fail(const std::string& s) {
    if (!full()) r_.violations.push_back(s);
  }
  Located self(int p) const { return {p, identity_map(sp_.canonical_set(p))}; }
  std::string at(int p) const { return " at " + sp_.describe(p); }

  bool in_range(int p, int x, const std::string& what) {
    if (x >= 0 && x < o_.size(p)) return true;
    fail(what + ": element " + std::to_string(x) + " out of range" + at(p));
    return false;
  }

  void for_tuples(const std::vector<int>& radix, const std::function<void(const std::vector<int>&)>& f) {
    double total = 1;
    for (int r : radix) total *= r;
    if (total == 0) return;
    std::vector<int> t(radix.size(), 0);
    if (total <= static_cast<double>(opt_.max_tuples)) {
      while (!full()) {
        f(t);
        int pos = static_cast<int>(t.size()) - 1;
        while (pos >= 0 && ++t[pos] == radix[pos]) t[pos--] = 0;
        if (pos < 0) break;
      }
      return;
    }
    ++r_.sampled;
    for (std::size_t k = 0; k < opt_.max_tuples && !full(); ++k) {
      for (std::size_t i = 0; i < radix.size(); ++i)
        t[i] = std::uniform_int_distribution<int>(0, radix[i] - 1)(rng_);
      f(t);
    }
  }

  // Automorphism index of the canonical comparison for alpha: f1 -> f2, or -1.
  int prepare(const Framed& f1, const Located& l1, const Framed& f2, const Located& l2, const SetMap& alpha,
              const std::string& what) {
    if (l1.profile < 0 || l2.profile < 0) {
      fail(what + ": profile beyond the bound");
      return -1;
    }
    if (!is_iso(oc_, alpha, f1.set, f2.set)) {
      fail(what + ": comparison map is not an isomorphism" + at(l2.profile));
      return -1;
    }
    const SetMap beta = sp_.transport(l1, l2, f1.set, f2.set, alpha);
    const int a = sp_.aut_index(l2.profile, beta);
    if (a < 0) {
      fail(what + ": comparison is not an automorphism" + at(l2.profile));
      return -1;
    }
    if (sp_.act(l2.profile, a) != l1.profile) {
      fail(what + ": colors disagree between " + sp_.describe(l1.profile) + " and " + sp_.describe(l2.profile));
      return -1;
    }
    return a;
  }

  void compare(int p2, int aut, int x1, int x2, const std::string& what) {
    ++r_.checked;
    const int img = o_.rho(p2, aut, x2);
    if (img != x1)
      fail(what + ": got " + std::to_string(x1) + ", expected " + std::to_string(img) + at(sp_.act(p2, aut)));
  }

  void check_identities() {
    for (int h = 0; h < oc_.num_levels(); ++h)
      for (int c = 0; c < sp_.colors().size(h); ++c) {
        const int pp = sp_.point_profile(h, c);
        if (pp < 0) {
          units_ = false;
          continue;
        }
        if (o_.size(pp) == 0) {
          units_ = false;
          fail("no identity for color " + std::to_string(c) + " at level " + std::to_string(h));
        } else if (!in_range(pp, o_.identity(h, c), "identity")) {
          units_ = false;
        }
      }
  }

  void check_rho() {
    std::size_t budget = 0;
    for (int p = 0; p < sp_.num_profiles() && !full(); ++p) {
      const int n = o_.size(p);
      if (n == 0) continue;
      const auto& autos = sp_.automorphisms(p);
      const RealizedSet& s = sp_.canonical_set(p);
      const int id = sp_.identity_aut(p);
      for (int x = 0; x < n; ++x)
        if (o_.rho(p, id, x) != x) fail("identity automorphism moves " + std::to_string(x) + at(p));
      bool ranges = true;
      for (std::size_t a = 0; a < autos.size() && ranges; ++a) {
        const int q = sp_.act(p, static_cast<int>(a));
        if (q < 0 || o_.size(q) != n) {
          fail("automorphism action changes the structure set" + at(p));
          ranges = false;
          break;
        }
        for (int x = 0; x < n && ranges; ++x) ranges = in_range(q, o_.rho(p, static_cast<int>(a), x), "rho");
      }
      if (!ranges) continue;
      for (std::size_t a = 0; a < autos.size() && !full(); ++a)
        for (std::size_t b = 0; b < autos.size() && !full(); ++b) {
          if (++budget > opt_.max_data) return;
          ++r_.data;
          const int ab = sp_.aut_index(p, compose(oc_, autos[b], autos[a], s));
          const int q = sp_.act(p, static_cast<int>(a));
          if (sp_.act(q, static_cast<int>(b)) != sp_.act(p, ab)) {
            fail("automorphism action is not functorial" + at(p));
            continue;
          }
          for_tuples({n}, [&](const std::vector<int>& t) {
            ++r_.checked;
            const int lhs = o_.rho(q, static_cast<int>(b), o_.rho(p, static_cast<int>(a), t[0]));
            if (lhs != o_.rho(p, ab, t[0])) fail("rho is not functorial" + at(p));
          });
        }
    }
  }

  void check_res() {
    std::size_t budget = 0;
    for (int p = 0; p < sp_.num_profiles() && !full(); ++p) {
      const int n = o_.size(p);
      if (n == 0) continue;
      const int v = sp_.profile(p).level;
      const RealizedSet& s = sp_.canonical_set(p);
      const Framed fp = sp_.framed(p);
      bool ranges = true;
      for (int m : oc_.morphisms_into(v)) {
        const int q = sp_.res_target(m, p);
        for (int x = 0; x < n && ranges; ++x) ranges = in_range(q, o_.res(m, p, x), "res");
      }
      if (!ranges) continue;
      {
        const int m = oc_.identity(v);
        SetMap proj;
        const Framed r = sp_.restricted(m, p, &proj);
        const Located lr = sp_.locate(r);
        const int a = prepare(r, lr, fp, self(p), proj, "restriction along an identity");
        if (a >= 0)
          for (int x = 0; x < n; ++x) compare(p, a, o_.res(m, p, x), x, "restriction along an identity");
      }
      for (int outer : oc_.morphisms_into(v)) {
        const int k = oc_.morphism(outer).src;
        SetMap po;
        const Framed ro = sp_.restricted(outer, p, &po);
        const Located lo = sp_.locate(ro);
        const SetMap psio = inverse(oc_, lo.to_canonical, ro.set, sp_.canonical_set(lo.profile));
        for (int inner : oc_.morphisms_into(k)) {
          if (full() || ++budget > opt_.max_data) return;
          ++r_.data;
          const int c = oc_.compose(outer, inner);
          SetMap p1, p2;
          const Framed r1 = sp_.restricted(c, p, &p1);
          const Framed r2 = sp_.restricted(inner, lo.profile, &p2);
          const SetMap map2 = compose(oc_, compose(oc_, p2, psio, ro.set), po, s);
          const auto alpha = detail::match_over(oc_, r1.set, p1, r2.set, map2, s);
          const std::string what = "restriction is not functorial";
          if (!alpha) {
            fail(what + ": no comparison" + at(p));
            continue;
          }
          const Located l1 = sp_.locate(r1), l2 = sp_.locate(r2);
          const int a = prepare(r1, l1, r2, l2, *alpha, what);
          if (a < 0) continue;
          for_tuples({n}, [&](const std::vector<int>& t) {
            compare(l2.profile, a, o_.res(c, p, t[0]), o_.res(inner, lo.profile, o_.res(outer, p, t[0])), what);
          });
        }
      }
      const auto& autos = sp_.automorphisms(p);
      const int id = sp_.identity_aut(p);
      for (int sg = 0; sg < static_cast<int>(autos.size()); ++sg) {
        if (sg == id) continue;
        const int q = sp_.act(p, sg);
        for (int m : oc_.morphisms_into(v)) {
          if (full() || ++budget > opt_.max_data) return;
          ++r_.data;
          SetMap proj;
          const Framed rq = sp_.restricted(m, q, nullptr);
          const Framed rp = sp_.restricted(m, p, &proj);
          const auto alpha = detail::match_over(oc_, rp.set, compose(oc_, proj, autos[sg], s), rp.set, proj, s);
          const std::string what = "restriction does not commute with automorphisms";
          if (!alpha) {
            fail(what + ": no comparison" + at(p));
            continue;
          }
          const Located lq = sp_.locate(rq), lp = sp_.locate(rp);
          const int a = prepare(rq, lq, rp, lp, *alpha, what);
          if (a < 0) continue;
          for_tuples({n}, [&](const std::vector<int>& t) {
            compare(lp.profile, a, o_.res(m, q, o_.rho(p, sg, t[0])), o_.res(m, p, t[0]), what);
          });
        }
      }
    }
  }

  void check_unit_restriction() {
    for (int h = 0; h < oc_.num_levels(); ++h)
      for (int c = 0; c < sp_.colors().size(h); ++c) {
        const int pp = sp_.point_profile(h, c);
        for (int m : oc_.morphisms_into(h)) {
          const int u = oc_.morphism(m).src;
          const int c2 = sp_.colors().restrict(m, c);
          ++r_.checked;
          if (sp_.res_target(m, pp) != sp_.point_profile(u, c2)) {
            fail("restriction of a point profile is not a point profile" + at(pp));
            continue;
          }
          if (o_.res(m, pp, o_.identity(h, c)) != o_.identity(u, c2))
            fail("restriction of an identity is not an identity" + at(pp));
        }
      }
  }

  void check_unitality() {
    for (int p = 0; p < sp_.num_profiles() && !full(); ++p) {
      const int n = o_.size(p);
      if (n == 0 || sp_.bound() < 1) continue;
      const Profile& pr = sp_.profile(p);
      const RealizedSet& s = sp_.canonical_set(p);
      const Framed fp = sp_.framed(p);
      std::vector<int> qs, ys;
      for (std::size_t i = 0; i < s.orbits.size(); ++i) {
        qs.push_back(sp_.point_profile(s.orbits[i].cls, pr.colors[i]));
        ys.push_back(o_.identity(s.orbits[i].cls, pr.colors[i]));
      }
      {
        Coproduct cp;
        const Framed f = sp_.composite(p, qs, &cp);
        const Located lf = sp_.locate(f);
        const int a = prepare(fp, self(p), f, lf, inverse(oc_, cp.projection, f.set, s), "right unitality");
        if (a >= 0)
          for (int x = 0; x < n; ++x) {
            const int g = o_.gamma(p, x, qs, ys);
            if (in_range(lf.profile, g, "right unitality")) compare(lf.profile, a, x, g, "right unitality");
          }
      }
      {
        const int outer = sp_.point_profile(pr.level, pr.out);
        const int e0 = sp_.canonical_set(outer).orbits[0].elt;
        Coproduct cp;
        const Framed f = sp_.composite(outer, {p}, &cp);
        const Located lf = sp_.locate(f);
        SetMap alpha;
        for (std::size_t o = 0; o < s.orbits.size(); ++o)
          alpha.push_back({static_cast<int>(o), oc_.coset(s.orbits[o].cls, G_.inv(e0))});
        const int a = prepare(fp, self(p), f, lf, alpha, "left unitality");
        if (a >= 0)
          for (int x = 0; x < n; ++x) {
            const int g = o_.gamma(outer, o_.identity(pr.level, pr.out), {p}, {x});
            if (in_range(lf.profile, g, "left unitality")) compare(lf.profile, a, x, g, "left unitality");
          }
      }
    }
  }

  std::vector<int> radix_of(int p, const std::vector<int>& qs) const {
    std::vector<int> r{o_.size(p)};
    for (int q : qs) r.push_back(o_.size(q));
    return r;
  }

  void check_composition() {
    budget_ = 0;
    for (int p = 0; p < sp_.num_profiles() && !full(); ++p) {
      if (o_.size(p) == 0) continue;
      detail::for_each_composable(
          o_, p,
          [&](const std::vector<int>& qs) {
            if (budget_ > opt_.max_data) return false;
            ++r_.data;
            check_gamma_range(p, qs);
            if (!full()) check_res_stability(p, qs);
            if (!full()) check_sigma(p, qs);
            if (!full()) check_tau(p, qs);
            if (!full()) check_associativity(p, qs);
            return !full();
          },
          &r_.out_of_bound);
    }
  }

  void check_gamma_range(int p, const std::vector<int>& qs) {
    const int target = sp_.gamma_target(p, qs);
    if (target < 0) {
      fail("composite profile missing" + at(p));
      return;
    }
    for_tuples(radix_of(p, qs), [&](const std::vector<int>& t) {
      const std::vector<int> ys(t.begin() + 1, t.end());
      in_range(target, o_.gamma(p, t[0], qs, ys), "gamma");
    });
  }

  void check_res_stability(int p, const std::vector<int>& qs) {
    const int v = sp_.profile(p).level;
    const RealizedSet& s = sp_.canonical_set(p);
    Coproduct cp;
    const Framed f = sp_.composite(p, qs, &cp);
    const Located lf = sp_.locate(f);
    const int pz = lf.profile;
    const SetMap psif = inverse(oc_, lf.to_canonical, f.set, sp_.canonical_set(pz));
    for (int m : oc_.morphisms_into(v)) {
      if (full() || ++budget_ > opt_.max_data) return;
      const std::string what = "restriction does not commute with composition";
      SetMap pl, pr;
      const Framed lside = sp_.restricted(m, pz, &pl);
      const SetMap mapl = compose(oc_, pl, psif, f.set);
      const Framed r = sp_.restricted(m, p, &pr);
      const Located lr = sp_.locate(r);
      const int p2 = lr.profile;
      const RealizedSet& s2 = sp_.canonical_set(p2);
      const SetMap psir = inverse(oc_, lr.to_canonical, r.set, s2);
      std::vector<int> mu, from, qs2;
      SetMap mapr;
      for (std::size_t j = 0; j < s2.orbits.size(); ++j) {
        const auto& st = psir[j];
        const auto& pt = pr[st.target];
        const int mj = oc_.find_morphism(s2.orbits[j].cls, s.orbits[pt.target].cls, G_.mul(st.elt, pt.elt));
        mu.push_back(mj);
        from.push_back(pt.target);
        SetMap pj;
        const Framed rj = sp_.restricted(mj, qs[pt.target], &pj);
        const Located lj = sp_.locate(rj);
        qs2.push_back(lj.profile);
        const SetMap psij = inverse(oc_, lj.to_canonical, rj.set, sp_.canonical_set(lj.profile));
        for (const auto& e : psij) {
          const auto& e2 = pj[e.target];
          const int a = cp.offsets[pt.target] + e2.target;
          mapr.push_back({a, oc_.coset(f.set.orbits[a].cls, G_.mul(e.elt, e2.elt))});
        }
      }
      const Framed rside = sp_.composite(p2, qs2);
      const auto alpha = detail::match_over(oc_, lside.set, mapl, rside.set, mapr, f.set);
      if (!alpha) {
        fail(what + ": no comparison" + at(p));
        continue;
      }
      const Located ll = sp_.locate(lside), lw = sp_.locate(rside);
      const int a = prepare(lside, ll, rside, lw, *alpha, what);
      if (a < 0) continue;
      for_tuples(radix_of(p, qs), [&](const std::vector<int>& t) {
        const std::vector<int> ys(t.begin() + 1, t.end());
        std::vector<int> ys2;
        for (std::size_t j = 0; j < mu.size(); ++j) ys2.push_back(o_.res(mu[j], qs[from[j]], ys[from[j]]));
        const int lhs = o_.res(m, pz, o_.gamma(p, t[0], qs, ys));
        const int rhs = o_.gamma(p2, o_.res(m, p, t[0]), qs2, ys2);
        compare(lw.profile, a, lhs, rhs, what);
      });
    }
  }

  void check_sigma(int p, const std::vector<int>& qs) {
    const RealizedSet& s = sp_.canonical_set(p);
    const auto& autos = sp_.automorphisms(p);
    const int id = sp_.identity_aut(p);
    Coproduct cp2;
    const Framed f2 = sp_.composite(p, qs, &cp2);
    const Located l2 = sp_.locate(f2);
    for (int sg = 0; sg < static_cast<int>(autos.size()); ++sg) {
      if (sg == id) continue;
      if (full() || ++budget_ > opt_.max_data) return;
      const std::string what = "composition is not equivariant for automorphisms of the outer profile";
      const SetMap& sigma = autos[sg];
      const int q = sp_.act(p, sg);
      std::vector<int> mor, qs1;
      std::vector<SetMap> emb;
      for (std::size_t i = 0; i < s.orbits.size(); ++i) {
        const int j = sigma[i].target;
        const int mi = oc_.find_morphism(s.orbits[i].cls, s.orbits[j].cls, sigma[i].elt);
        mor.push_back(mi);
        SetMap pi;
        const Framed ri = sp_.restricted(mi, qs[j], &pi);
        const Located li = sp_.locate(ri);
        qs1.push_back(li.profile);
        emb.push_back(compose(oc_, inverse(oc_, li.to_canonical, ri.set, sp_.canonical_set(li.profile)), pi,
                              sp_.canonical_set(qs[j])));
      }
      Coproduct cp1;
      const Framed f1 = sp_.composite(q, qs1, &cp1);
      SetMap alpha;
      for (std::size_t i = 0; i < s.orbits.size(); ++i) {
        const int j = sigma[i].target;
        for (const auto& e : emb[i]) {
          const int b = cp2.offsets[j] + e.target;
          alpha.push_back({b, oc_.coset(f2.set.orbits[b].cls, e.elt)});
        }
      }
      const Located l1 = sp_.locate(f1);
      const int a = prepare(f1, l1, f2, l2, alpha, what);
      if (a < 0) continue;
      for_tuples(radix_of(p, qs), [&](const std::vector<int>& t) {
        const std::vector<int> ys(t.begin() + 1, t.end());
        std::vector<int> ys1;
        for (std::size_t i = 0; i < s.orbits.size(); ++i) {
          const int j = sigma[i].target;
          ys1.push_back(o_.res(mor[i], qs[j], ys[j]));
        }
        const int lhs = o_.gamma(q, o_.rho(p, sg, t[0]), qs1, ys1);
        compare(l2.profile, a, lhs, o_.gamma(p, t[0], qs, ys), what);
      });
    }
  }

  void check_tau(int p, const std::vector<int>& qs) {
    Coproduct cp;
    const Framed f2 = sp_.composite(p, qs, &cp);
    const Located l2 = sp_.locate(f2);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto& autos = sp_.automorphisms(qs[i]);
      const int id = sp_.identity_aut(qs[i]);
      for (int tu = 0; tu < static_cast<int>(autos.size()); ++tu) {
        if (tu == id) continue;
        if (full() || ++budget_ > opt_.max_data) return;
        const std::string what = "composition is not equivariant for automorphisms of an input profile";
        std::vector<int> qs1 = qs;
        qs1[i] = sp_.act(qs[i], tu);
        const Framed f1 = sp_.composite(p, qs1);
        SetMap alpha = identity_map(f1.set);
        for (std::size_t o = 0; o < autos[tu].size(); ++o)
          alpha[cp.offsets[i] + o] = {cp.offsets[i] + autos[tu][o].target, autos[tu][o].elt};
        const Located l1 = sp_.locate(f1);
        const int a = prepare(f1, l1, f2, l2, alpha, what);
        if (a < 0) continue;
        for_tuples(radix_of(p, qs), [&](const std::vector<int>& t) {
          const std::vector<int> ys(t.begin() + 1, t.end());
          std::vector<int> ys1 = ys;
          ys1[i] = o_.rho(qs[i], tu, ys[i]);
          compare(l2.profile, a, o_.gamma(p, t[0], qs1, ys1), o_.gamma(p, t[0], qs, ys), what);
        });
      }
    }
  }

  void check_associativity(int p, const std::vector<int>& qs) {
    Coproduct cpf;
    const Framed f = sp_.composite(p, qs, &cpf);
    const Located lf = sp_.locate(f);
    const int pu = lf.profile;
    const RealizedSet& su = sp_.canonical_set(pu);
    detail::for_each_composable(
        o_, pu,
        [&](const std::vector<int>& zs) {
          if (full() || ++budget_ > opt_.max_data) return false;
          associativity_instance(p, qs, f, cpf, lf, su, zs);
          return !full();
        },
        nullptr);
  }

  void associativity_instance(int p, const std::vector<int>& qs, const Framed& f, const Coproduct& cpf,
                              const Located& lf, const RealizedSet& su, const std::vector<int>& zs) {
    const std::string what = "composition is not associative";
    const int pu = lf.profile;
    Coproduct cpl;
    const Framed fl = sp_.composite(pu, zs, &cpl);
    // Per orbit a of the inner composite: its input profile restricted along a.
    const int na = static_cast<int>(f.set.orbits.size());
    std::vector<int> nu(na), wa(na), za(na);
    std::vector<SetMap> zemb(na);  // canonical Z'_a -> canonical Z_w
    for (int a = 0; a < na; ++a) {
      const auto& e = lf.to_canonical[a];
      wa[a] = e.target;
      nu[a] = oc_.find_morphism(f.set.orbits[a].cls, su.orbits[e.target].cls, e.elt);
      SetMap pa;
      const Framed ra = sp_.restricted(nu[a], zs[wa[a]], &pa);
      const Located la = sp_.locate(ra);
      za[a] = la.profile;
      zemb[a] = compose(oc_, inverse(oc_, la.to_canonical, ra.set, sp_.canonical_set(la.profile)), pa,
                        sp_.canonical_set(zs[wa[a]]));
    }
    std::vector<int> vs;
    std::vector<std::vector<int>> zin(qs.size());
    SetMap fr;  // right composite -> left composite
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const int n_i = static_cast<int>(sp_.canonical_set(qs[i]).orbits.size());
      for (int o = 0; o < n_i; ++o) zin[i].push_back(za[cpf.offsets[i] + o]);
      Coproduct cpv;
      const Framed fv = sp_.composite(qs[i], zin[i], &cpv);
      const Located lv = sp_.locate(fv);
      vs.push_back(lv.profile);
      if (lv.profile < 0) {
        fail(what + ": inner composite beyond the bound" + at(p));
        return;
      }
      const SetMap psiv = inverse(oc_, lv.to_canonical, fv.set, sp_.canonical_set(lv.profile));
      for (const auto& e1 : psiv) {
        const int o = cpv.projection[e1.target].target;
        const int q = e1.target - cpv.offsets[o];
        const int a = cpf.offsets[i] + o;
        const auto& e2 = zemb[a][q];
        const int leaf = cpl.offsets[wa[a]] + e2.target;
        fr.push_back({leaf, oc_.coset(fl.set.orbits[leaf].cls, G_.mul(e1.elt, e2.elt))});
      }
    }
    Coproduct cpr;
    const Framed frs = sp_.composite(p, vs, &cpr);
    if (!is_iso(oc_, fr, frs.set, fl.set)) {
      fail(what + ": comparison map is not an isomorphism" + at(p));
      return;
    }
    const SetMap alpha = inverse(oc_, fr, frs.set, fl.set);
    const Located ll = sp_.locate(fl), lr = sp_.locate(frs);
    const int aut = prepare(fl, ll, frs, lr, alpha, what);
    if (aut < 0) return;
    std::vector<int> radix = radix_of(p, qs);
    for (int z : zs) radix.push_back(o_.size(z));
    const std::size_t nq = qs.size();
    for_tuples(radix, [&](const std::vector<int>& t) {
      const int x = t[0];
      const std::vector<int> ys(t.begin() + 1, t.begin() + 1 + nq);
      const std::vector<int> zv(t.begin() + 1 + nq, t.end());
      const int lhs = o_.gamma(pu, o_.gamma(p, x, qs, ys), zs, zv);
      std::vector<int> vv;
      for (std::size_t i = 0; i < nq; ++i) {
        std::vector<int> zi;
        for (std::size_t o = 0; o < zin[i].size(); ++o) {
          const int a = cpf.offsets[i] + static_cast<int>(o);
          zi.push_back(o_.res(nu[a], zs[wa[a]], zv[wa[a]]));
        }
        vv.push_back(o_.gamma(qs[i], ys[i], zin[i], zi));
      }
      compare(lr.profile, aut, lhs, o_.gamma(p, x, vs, vv), what);
    });
  }

  const DiscreteOperad& o_;
  const ProfileSpace& sp_;
  const OrbitCategory& oc_;
  const Group& G_;
  const ValidateOptions& opt_;
  std::mt19937 rng_;
  OperadReport r_;
  bool units_ = true;
  std::size_t budget_ = 0;
};

}  // namespace

OperadReport validate_operad(const DiscreteOperad& o, const ValidateOptions& opt) { return Checker(o, opt).run(); }

// ---- arity support and maps ----

WeakIndexingSystem arity_support(const DiscreteOperad& o) {
  const ProfileSpace& sp = o.space();
  auto u = std::make_shared<const SetUniverse>(sp.category_ptr(), sp.bound());
  std::vector<char> bits(u->total_size(), 0);
  for (int p = 0; p < sp.num_profiles(); ++p)
    if (o.size(p) > 0) bits[u->offset(sp.profile(p).level) + u->index_of(sp.profile(p).set)] = 1;
  return WeakIndexingSystem(u, std::move(bits), Repr::Truncated);
}

OperadPtr h0(const DiscreteOperad& o) { return ninfty(arity_support(o)); }

int map_profile(const OperadMap& f, const DiscreteOperad& o, const DiscreteOperad& p, int profile) {
  const Profile& pr = o.space().profile(profile);
  Profile q = pr;
  const RealizedSet& s = o.space().canonical_set(profile);
  for (std::size_t i = 0; i < q.colors.size(); ++i) q.colors[i] = f.colors[s.orbits[i].cls][pr.colors[i]];
  q.out = f.colors[pr.level][pr.out];
  return p.space().find(q);
}

std::string operad_map_violation(const OperadMap& f, const DiscreteOperad& o, const DiscreteOperad& p,
                                 const ValidateOptions& opt) {
  const ProfileSpace& so = o.space();
  const ProfileSpace& spp = p.space();
  const OrbitCategory& oc = so.category();
  if (spp.bound() < so.bound()) return "target bound is smaller than the source bound";
  if (!is_coeff_map(so.colors(), spp.colors(), f.colors)) return "color map is not a map of coefficient systems";
  if (static_cast<int>(f.elements.size()) != so.num_profiles()) return "one element function per profile required";
  std::vector<int> img(so.num_profiles());
  for (int q = 0; q < so.num_profiles(); ++q) {
    img[q] = map_profile(f, o, p, q);
    if (img[q] < 0) return "image profile missing: " + so.describe(q);
    if (static_cast<int>(f.elements[q].size()) != o.size(q)) return "element function has the wrong length";
    for (int y : f.elements[q])
      if (y < 0 || y >= p.size(img[q])) return "element image out of range at " + so.describe(q);
  }
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int c = 0; c < so.colors().size(h); ++c) {
      const int pp = so.point_profile(h, c);
      if (pp < 0 || o.size(pp) == 0) continue;
      if (f.elements[pp][o.identity(h, c)] != p.identity(h, f.colors[h][c]))
        return "identity not preserved at level " + std::to_string(h);
    }
  for (int q = 0; q < so.num_profiles(); ++q) {
    const int n = o.size(q);
    if (n == 0) continue;
    for (std::size_t a = 0; a < so.automorphisms(q).size(); ++a) {
      const int t = so.act(q, static_cast<int>(a));
      for (int x = 0; x < n; ++x)
        if (f.elements[t][o.rho(q, static_cast<int>(a), x)] != p.rho(img[q], static_cast<int>(a), f.elements[q][x]))
          return "automorphism action not preserved at " + so.describe(q);
    }
    for (int m : oc.morphisms_into(so.profile(q).level)) {
      const int t = so.res_target(m, q);
      for (int x = 0; x < n; ++x)
        if (f.elements[t][o.res(m, q, x)] != p.res(m, img[q], f.elements[q][x]))
          return "restriction not preserved at " + so.describe(q);
    }
  }
  std::mt19937 rng(opt.seed);
  std::string bad;
  for (int q = 0; q < so.num_profiles() && bad.empty(); ++q) {
    if (o.size(q) == 0) continue;
    detail::for_each_composable(
        o, q,
        [&](const std::vector<int>& qs) {
          const int t = so.gamma_target(q, qs);
          std::vector<int> qs2;
          for (int z : qs) qs2.push_back(img[z]);
          std::vector<int> radix{o.size(q)};
          double total = o.size(q);
          for (int z : qs) {
            radix.push_back(o.size(z));
            total *= o.size(z);
          }
          const bool sample = total > static_cast<double>(opt.max_tuples);
          const std::size_t rounds = sample ? opt.max_tuples : static_cast<std::size_t>(total);
          std::vector<int> d(radix.size(), 0);
          for (std::size_t k = 0; k < rounds; ++k) {
            if (sample)
              for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::uniform_int_distribution<int>(0, radix[i] - 1)(rng);
            std::vector<int> ys(d.begin() + 1, d.end()), ys2;
            for (std::size_t i = 0; i < qs.size(); ++i) ys2.push_back(f.elements[qs[i]][ys[i]]);
            if (f.elements[t][o.gamma(q, d[0], qs, ys)] != p.gamma(img[q], f.elements[q][d[0]], qs2, ys2)) {
              bad = "composition not preserved at " + so.describe(q);
              return false;
            }
            if (!sample)
              for (int pos = static_cast<int>(d.size()) - 1; pos >= 0; --pos) {
                if (++d[pos] < radix[pos]) break;
                d[pos] = 0;
              }
          }
          return true;
        },
        nullptr);
  }
  return bad;
}

bool operad_map_check(const OperadMap& f, const DiscreteOperad& o, const DiscreteOperad& p) {
  return operad_map_violation(f, o, p).empty();
}

std::vector<OperadMap> operad_maps(const DiscreteOperad& o, const DiscreteOperad& p, std::size_t cap) {
  const ProfileSpace& so = o.space();
  std::vector<OperadMap> out;
  ValidateOptions exhaustive;
  exhaustive.max_tuples = SIZE_MAX;
  for (const CoeffMap& cm : coeff_maps(so.colors(), p.space().colors(), cap)) {
    OperadMap f{cm, std::vector<std::vector<int>>(so.num_profiles())};
    std::vector<int> slots, range;  // one slot per element of each source profile
    std::vector<std::pair<int, int>> where;
    bool possible = true;
    double total = 1;
    for (int q = 0; q < so.num_profiles() && possible; ++q) {
      const int t = map_profile(f, o, p, q);
      if (t < 0) {
        possible = false;
        break;
      }
      f.elements[q].assign(o.size(q), 0);
      for (int x = 0; x < o.size(q); ++x) {
        range.push_back(p.size(t));
        where.emplace_back(q, x);
        total *= p.size(t);
      }
    }
    if (!possible || total == 0) continue;
    if (total > static_cast<double>(cap)) throw CapExceeded("too many candidate operad maps");
    std::vector<int> d(range.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < d.size(); ++k) f.elements[where[k].first][where[k].second] = d[k];
      if (operad_map_violation(f, o, p, exhaustive).empty()) {
        out.push_back(f);
        if (out.size() > cap) throw CapExceeded("too many operad maps");
      }
      int pos = static_cast<int>(d.size()) - 1;
      while (pos >= 0 && ++d[pos] == range[pos]) d[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

OperadMap identity_operad_map(const DiscreteOperad& o) {
  const ProfileSpace& sp = o.space();
  OperadMap f;
  for (int h = 0; h < sp.category().num_levels(); ++h) {
    std::vector<int> row(sp.colors().size(h));
    std::iota(row.begin(), row.end(), 0);
    f.colors.push_back(std::move(row));
  }
  for (int q = 0; q < sp.num_profiles(); ++q) {
    std::vector<int> row(o.size(q));
    std::iota(row.begin(), row.end(), 0);
    f.elements.push_back(std::move(row));
  }
  return f;
}

NinftyMaps alg_to_ninfty(const DiscreteOperad& o, const WeakIndexingSystem& w) {
  if (w.bound() < o.bound()) throw InvalidArgument("indexing system bound is below the operad's bound");
  NinftyMaps r;
  const OperadPtr target = ninfty(w, o.bound());
  const ProfileSpace& so = o.space();
  const CoeffSystem& tc = target->space().colors();
  OperadMap f;
  for (int h = 0; h < so.category().num_levels(); ++h) {
    if (so.colors().size(h) > 0 && tc.size(h) == 0) return r;
    f.colors.emplace_back(so.colors().size(h), 0);
  }
  for (int q = 0; q < so.num_profiles(); ++q) f.elements.emplace_back(o.size(q), 0);
  if (!operad_map_check(f, o, *target)) return r;
  r.inhabited = true;
  r.map = std::move(f);
  return r;
}

bool same_operad(const DiscreteOperad& a, const DiscreteOperad& b) {
  const ProfileSpace& sa = a.space();
  const ProfileSpace& sb = b.space();
  const OrbitCategory& oc = sa.category();
  if (sa.num_profiles() != sb.num_profiles() || sa.bound() != sb.bound() || !(sa.colors() == sb.colors())) return false;
  for (int p = 0; p < sa.num_profiles(); ++p)
    if (!(sa.profile(p) == sb.profile(p)) || a.size(p) != b.size(p)) return false;
  for (int h = 0; h < oc.num_levels(); ++h)
    for (int c = 0; c < sa.colors().size(h); ++c) {
      const int pp = sa.point_profile(h, c);
      if (pp >= 0 && a.size(pp) > 0 && a.identity(h, c) != b.identity(h, c)) return false;
    }
  for (int p = 0; p < sa.num_profiles(); ++p) {
    for (int x = 0; x < a.size(p); ++x) {
      for (std::size_t s = 0; s < sa.automorphisms(p).size(); ++s)
        if (a.rho(p, static_cast<int>(s), x) != b.rho(p, static_cast<int>(s), x)) return false;
      for (int m : oc.morphisms_into(sa.profile(p).level))
        if (a.res(m, p, x) != b.res(m, p, x)) return false;
    }
  }
  bool same = true;
  for (int p = 0; p < sa.num_profiles() && same; ++p) {
    if (a.size(p) == 0) continue;
    detail::for_each_composable(
        a, p,
        [&](const std::vector<int>& qs) {
          std::vector<int> radix{a.size(p)};
          for (int q : qs) radix.push_back(a.size(q));
          std::vector<int> d(radix.size(), 0);
          while (true) {
            const std::vector<int> ys(d.begin() + 1, d.end());
            if (a.gamma(p, d[0], qs, ys) != b.gamma(p, d[0], qs, ys)) {
              same = false;
              return false;
            }
            int pos = static_cast<int>(d.size()) - 1;
            while (pos >= 0 && ++d[pos] == radix[pos]) d[pos--] = 0;
            if (pos < 0) break;
          }
          return true;
        },
        nullptr);
  }
  return same;
}

}  // namespace eqv
