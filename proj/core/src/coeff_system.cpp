#include "eqv/coeff_system.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "eqv/error.hpp"

namespace eqv {

CoeffSystem::CoeffSystem(OrbitCategoryPtr oc, std::vector<int> sizes,
                         std::vector<std::vector<int>> restriction,
                         std::optional<MonoidData> monoid)
    : oc_(std::move(oc)),
      sizes_(std::move(sizes)),
      restriction_(std::move(restriction)),
      monoid_(std::move(monoid)) {
  if (static_cast<int>(sizes_.size()) != oc_->num_levels())
    throw InvalidArgument("one size per level required");
  if (static_cast<int>(restriction_.size()) != oc_->num_morphisms())
    throw InvalidArgument("one restriction table per morphism required");
  for (int m = 0; m < oc_->num_morphisms(); ++m) {
    const auto& mor = oc_->morphism(m);
    if (static_cast<int>(restriction_[m].size()) != sizes_[mor.tgt])
      throw InvalidArgument("restriction table has the wrong length");
    for (int v : restriction_[m])
      if (v < 0 || v >= sizes_[mor.src]) throw InvalidArgument("restriction value out of range");
  }
  if (monoid_) {
    if (static_cast<int>(monoid_->add.size()) != oc_->num_levels() ||
        static_cast<int>(monoid_->zero.size()) != oc_->num_levels())
      throw InvalidArgument("monoid data must cover every level");
    for (int h = 0; h < oc_->num_levels(); ++h) {
      if (sizes_[h] == 0) throw InvalidArgument("a monoid level cannot be empty");
      if (static_cast<int>(monoid_->add[h].size()) != sizes_[h])
        throw InvalidArgument("addition table has the wrong size");
      for (const auto& row : monoid_->add[h]) {
        if (static_cast<int>(row.size()) != sizes_[h]) throw InvalidArgument("addition table has the wrong size");
        for (int v : row)
          if (v < 0 || v >= sizes_[h]) throw InvalidArgument("addition value out of range");
      }
      if (monoid_->zero[h] < 0 || monoid_->zero[h] >= sizes_[h]) throw InvalidArgument("zero out of range");
    }
  }
}

std::string CoeffSystem::violation() const {
  std::ostringstream out;
  const OrbitCategory& oc = *oc_;
  for (int k = 0; k < oc.num_levels(); ++k) {
    const int id = oc.identity(k);
    for (int x = 0; x < sizes_[k]; ++x)
      if (restriction_[id][x] != x) {
        out << "identity morphism at level " << k << " moves " << x;
        return out.str();
      }
  }
  for (int outer = 0; outer < oc.num_morphisms(); ++outer) {
    const int k = oc.morphism(outer).src;
    for (int inner = 0; inner < oc.num_morphisms(); ++inner) {
      if (oc.morphism(inner).tgt != k) continue;
      const int comp = oc.compose(outer, inner);
      for (int x = 0; x < sizes_[oc.morphism(outer).tgt]; ++x)
        if (restriction_[comp][x] != restriction_[inner][restriction_[outer][x]]) {
          out << "restriction is not functorial on morphisms " << inner << " then " << outer;
          return out.str();
        }
    }
  }
  if (!monoid_) return {};
  for (int h = 0; h < oc.num_levels(); ++h) {
    const auto& a = monoid_->add[h];
    const int z = monoid_->zero[h];
    const int n = sizes_[h];
    for (int x = 0; x < n; ++x) {
      if (a[x][z] != x || a[z][x] != x) {
        out << "zero is not a unit at level " << h;
        return out.str();
      }
      for (int y = 0; y < n; ++y) {
        if (a[x][y] != a[y][x]) {
          out << "addition is not commutative at level " << h;
          return out.str();
        }
        for (int w = 0; w < n; ++w)
          if (a[a[x][y]][w] != a[x][a[y][w]]) {
            out << "addition is not associative at level " << h;
            return out.str();
          }
      }
    }
  }
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const int h = oc.morphism(m).tgt, k = oc.morphism(m).src;
    const auto& r = restriction_[m];
    if (r[monoid_->zero[h]] != monoid_->zero[k]) {
      out << "restriction along morphism " << m << " does not preserve zero";
      return out.str();
    }
    for (int x = 0; x < sizes_[h]; ++x)
      for (int y = 0; y < sizes_[h]; ++y)
        if (r[monoid_->add[h][x][y]] != monoid_->add[k][r[x]][r[y]]) {
          out << "restriction along morphism " << m << " is not additive";
          return out.str();
        }
  }
  return {};
}

CoeffSystem fixed_point_system(OrbitCategoryPtr oc, const GSet& y) {
  std::vector<std::vector<int>> pts(oc->num_levels());
  std::vector<int> sizes;
  for (int h = 0; h < oc->num_levels(); ++h) {
    pts[h] = y.fixed_points(oc->rep(h));
    sizes.push_back(static_cast<int>(pts[h].size()));
  }
  std::vector<std::vector<int>> res;
  for (int m = 0; m < oc->num_morphisms(); ++m) {
    const auto& mor = oc->morphism(m);
    std::vector<int> row;
    for (int p : pts[mor.tgt]) {
      const int img = y.act(mor.elt, p);
      const auto it = std::lower_bound(pts[mor.src].begin(), pts[mor.src].end(), img);
      row.push_back(static_cast<int>(it - pts[mor.src].begin()));
    }
    res.push_back(std::move(row));
  }
  return CoeffSystem(std::move(oc), std::move(sizes), std::move(res));
}

CoeffSystem constant_system(OrbitCategoryPtr oc, int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::vector<std::vector<int>> res(oc->num_morphisms(), id);
  std::vector<int> sizes(oc->num_levels(), n);
  return CoeffSystem(std::move(oc), std::move(sizes), std::move(res));
}

CoeffSystem terminal_system(OrbitCategoryPtr oc) {
  const int levels = oc->num_levels();
  MonoidData md{std::vector<std::vector<std::vector<int>>>(levels, {{0}}), std::vector<int>(levels, 0)};
  CoeffSystem base = constant_system(oc, 1);
  return CoeffSystem(std::move(oc), base.sizes(), base.restriction(), std::move(md));
}

CoeffSystem constant_monoid(OrbitCategoryPtr oc, std::vector<std::vector<int>> add, int zero) {
  const int n = static_cast<int>(add.size());
  const int levels = oc->num_levels();
  MonoidData md{std::vector<std::vector<std::vector<int>>>(levels, add), std::vector<int>(levels, zero)};
  CoeffSystem base = constant_system(oc, n);
  return CoeffSystem(std::move(oc), base.sizes(), base.restriction(), std::move(md));
}

CoeffSystem truncated_naturals(OrbitCategoryPtr oc, int cap) {
  if (cap < 0) throw InvalidArgument("cap must be nonnegative");
  std::vector<std::vector<int>> add(cap + 1, std::vector<int>(cap + 1));
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; b <= cap; ++b) add[a][b] = std::min(a + b, cap);
  return constant_monoid(std::move(oc), std::move(add), 0);
}

CoeffSystem underlying_sets(const CoeffSystem& x) {
  return CoeffSystem(x.category_ptr(), x.sizes(), x.restriction());
}

bool is_coeff_map(const CoeffSystem& x, const CoeffSystem& y, const CoeffMap& f) {
  const OrbitCategory& oc = x.category();
  if (static_cast<int>(f.size()) != oc.num_levels()) return false;
  for (int h = 0; h < oc.num_levels(); ++h) {
    if (static_cast<int>(f[h].size()) != x.size(h)) return false;
    for (int v : f[h])
      if (v < 0 || v >= y.size(h)) return false;
  }
  for (int m = 0; m < oc.num_morphisms(); ++m) {
    const auto& mor = oc.morphism(m);
    for (int a = 0; a < x.size(mor.tgt); ++a)
      if (f[mor.src][x.restrict(m, a)] != y.restrict(m, f[mor.tgt][a])) return false;
  }
  return true;
}

std::vector<CoeffMap> coeff_maps(const CoeffSystem& x, const CoeffSystem& y, std::size_t cap) {
  const OrbitCategory& oc = x.category();
  const int levels = oc.num_levels();
  CoeffMap f(levels);
  for (int h = 0; h < levels; ++h) f[h].assign(x.size(h), -1);
  std::vector<std::pair<int, int>> vars;
  for (int h = 0; h < levels; ++h)
    for (int a = 0; a < x.size(h); ++a) vars.push_back({h, a});
  std::vector<CoeffMap> out;
  auto consistent = [&](int h) {
    for (int m : oc.morphisms_into(h)) {
      const int k = oc.morphism(m).src;
      for (int a = 0; a < x.size(h); ++a) {
        if (f[h][a] < 0) continue;
        const int lhs = f[k][x.restrict(m, a)];
        if (lhs >= 0 && lhs != y.restrict(m, f[h][a])) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == vars.size()) {
      if (out.size() >= cap) throw CapExceeded("too many coefficient system maps");
      out.push_back(f);
      return;
    }
    const auto [h, a] = vars[i];
    for (int v = 0; v < y.size(h); ++v) {
      f[h][a] = v;
      if (consistent(h)) self(self, i + 1);
    }
    f[h][a] = -1;
  };
  rec(rec, 0);
  return out;
}

std::int64_t tuple_count(const CoeffSystem& x, const RealizedSet& a) {
  std::int64_t n = 1;
  for (const auto& o : a.orbits) {
    const int s = x.size(o.cls);
    if (s == 0) return 0;
    if (n > std::numeric_limits<std::int64_t>::max() / s) return std::numeric_limits<std::int64_t>::max();
    n *= s;
  }
  return n;
}

Tuple decode_tuple(const CoeffSystem& x, const RealizedSet& a, std::int64_t index) {
  Tuple t(a.orbits.size());
  for (int i = static_cast<int>(a.orbits.size()) - 1; i >= 0; --i) {
    const int s = x.size(a.orbits[i].cls);
    t[i] = static_cast<int>(index % s);
    index /= s;
  }
  return t;
}

std::int64_t encode_tuple(const CoeffSystem& x, const RealizedSet& a, const Tuple& t) {
  std::int64_t index = 0;
  for (std::size_t i = 0; i < a.orbits.size(); ++i) index = index * x.size(a.orbits[i].cls) + t[i];
  return index;
}

int orbit_morphism(const OrbitCategory& oc, const SetMap& f, const RealizedSet& a,
                   const RealizedSet& b, int i) {
  const int m = oc.find_morphism(a.orbits[i].cls, b.orbits[f[i].target].cls, f[i].elt);
  if (m < 0) throw InvalidArgument("map entry is not a morphism of orbits");
  return m;
}

Tuple pullback_tuple(const CoeffSystem& x, const SetMap& f, const RealizedSet& a,
                     const RealizedSet& b, const Tuple& t) {
  Tuple r(a.orbits.size());
  for (std::size_t i = 0; i < a.orbits.size(); ++i)
    r[i] = x.restrict(orbit_morphism(x.category(), f, a, b, static_cast<int>(i)), t[f[i].target]);
  return r;
}

Tuple push_tuple(const CoeffSystem& x, const SetMap& iso, const RealizedSet& a,
                 const RealizedSet& b, const Tuple& t) {
  const OrbitCategory& oc = x.category();
  Tuple r(b.orbits.size(), -1);
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    const int k = a.orbits[i].cls;
    const int back = oc.find_morphism(k, k, oc.group().inv(iso[i].elt));
    if (back < 0) throw InvalidArgument("push along a non-isomorphism");
    r[iso[i].target] = x.restrict(back, t[i]);
  }
  return r;
}

}  // namespace eqv
