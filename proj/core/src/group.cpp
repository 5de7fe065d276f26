#include "eqv/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "eqv/error.hpp"

namespace eqv {
namespace {

Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm r(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
  return r;
}

bool is_bijection(const Perm& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<char> seen(degree, 0);
  for (int v : p) {
    if (v < 0 || v >= degree || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<int> compute_inverses(const std::vector<std::vector<int>>& t) {
  const int n = static_cast<int>(t.size());
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t[a][b] == 0) inv[a] = b;
  return inv;
}

}  // namespace

Group Group::from_table(std::string name, std::vector<std::vector<int>> table,
                        std::vector<std::string> labels) {
  Group g;
  g.name_ = std::move(name);
  g.table_ = std::move(table);
  const int n = g.order();
  if (n == 0) throw InvalidArgument("group table is empty");
  for (const auto& row : g.table_)
    if (static_cast<int>(row.size()) != n)
      throw InvalidArgument("group table is not square");
  g.inverse_ = compute_inverses(g.table_);
  g.labels_ = std::move(labels);
  if (auto v = g.axiom_violation(); !v.empty()) throw InvalidArgument(v);
  return g;
}

std::string Group::axiom_violation() const {
  const int n = order();
  std::ostringstream os;
  for (int a = 0; a < n; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) {
      os << "element 0 is not a two-sided identity at " << a;
      return os.str();
    }
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      const int r = mul(a, b), c = mul(b, a);
      if (r < 0 || r >= n || c < 0 || c >= n || row[r] || col[c]) {
        os << "row/column " << a << " is not a permutation";
        return os.str();
      }
      row[r] = col[c] = 1;
    }
    if (inverse_[a] < 0 || mul(inverse_[a], a) != 0) {
      os << "element " << a << " has no two-sided inverse";
      return os.str();
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          os << "associativity fails on (" << a << "," << b << "," << c << ")";
          return os.str();
        }
  return {};
}

Group group_from_permutations(std::vector<Perm> elements, std::string name) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) throw InvalidArgument("no permutations");
  std::map<Perm, int> index;
  for (int i = 0; i < static_cast<int>(elements.size()); ++i) index[elements[i]] = i;
  Perm id(elements[0].size());
  std::iota(id.begin(), id.end(), 0);
  if (elements[0] != id) throw InvalidArgument("permutation list lacks the identity");
  Group g;
  g.name_ = std::move(name);
  const int n = static_cast<int>(elements.size());
  g.table_.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto it = index.find(compose(elements[a], elements[b]));
      if (it == index.end()) throw InvalidArgument("permutation list is not closed");
      g.table_[a][b] = it->second;
    }
  g.inverse_ = compute_inverses(g.table_);
  g.perms_ = std::move(elements);
  return g;
}

Group group_from_generators(int degree, const std::vector<Perm>& generators,
                            std::size_t cap, std::string name) {
  if (degree < 0) throw InvalidArgument("negative degree");
  for (const auto& p : generators)
    if (!is_bijection(p, degree)) throw InvalidArgument("generator is not a bijection");
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<Perm> seen{id};
  std::vector<Perm> frontier{id};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& p : frontier)
      for (const auto& s : generators) {
        Perm q = compose(s, p);
        if (seen.insert(q).second) {
          if (seen.size() > cap) throw CapExceeded("group closure exceeds size cap");
          next.push_back(std::move(q));
        }
      }
    frontier = std::move(next);
  }
  return group_from_permutations({seen.begin(), seen.end()}, std::move(name));
}

Group trivial_group() { return group_from_generators(1, {}, kDefaultGroupCap, "e"); }

Group cyclic_group(int n) {
  if (n < 1) throw InvalidArgument("cyclic group order must be positive");
  Perm r(n);
  for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
  return group_from_generators(n, {r}, kDefaultGroupCap, "C" + std::to_string(n));
}

Group dihedral_group(int n) {
  if (n < 3) throw InvalidArgument("dihedral group needs n >= 3");
  Perm r(n), s(n);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return group_from_generators(n, {r, s}, kDefaultGroupCap, "D" + std::to_string(n));
}

Group symmetric_group(int n) {
  if (n < 1) throw InvalidArgument("symmetric group degree must be positive");
  std::vector<Perm> gens;
  if (n >= 2) {
    Perm t(n), c(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens = {t, c};
  }
  return group_from_generators(n, gens, kDefaultGroupCap, "S" + std::to_string(n));
}

Group direct_product(const Group& a, const Group& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return Group::from_table(a.name() + "x" + b.name(), std::move(t));
}

Group klein_four_group() { return direct_product(cyclic_group(2), cyclic_group(2)); }

Group named_group(const std::string& name) {
  if (name == "e" || name == "C1") return trivial_group();
  if (name == "C2xC2" || name == "V4") return klein_four_group();
  auto number = [&](std::size_t from) {
    try {
      std::size_t used = 0;
      int v = std::stoi(name.substr(from), &used);
      if (used + from != name.size()) throw InvalidArgument("bad group name " + name);
      return v;
    } catch (const std::logic_error&) {
      throw InvalidArgument("unknown group name " + name);
    }
  };
  if (name.size() >= 2 && name[0] == 'C') return cyclic_group(number(1));
  if (name.size() >= 2 && name[0] == 'D') return dihedral_group(number(1));
  if (name.size() >= 2 && name[0] == 'S') return symmetric_group(number(1));
  throw InvalidArgument("unknown group name " + name);
}

bool Subgroup::contains(int g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

bool Subgroup::includes(const Subgroup& other) const {
  return std::includes(elements.begin(), elements.end(), other.elements.begin(),
                       other.elements.end());
}

Subgroup whole_group(const Group& g) {
  Subgroup s;
  s.elements.resize(g.order());
  std::iota(s.elements.begin(), s.elements.end(), 0);
  return s;
}

Subgroup trivial_subgroup() { return Subgroup{{0}}; }

Subgroup generated_subgroup(const Group& g, const std::vector<int>& gens) {
  std::set<int> seen{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int s : gens) {
        int y = g.mul(s, x);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return Subgroup{{seen.begin(), seen.end()}};
}

bool is_subgroup(const Group& g, const std::vector<int>& elements) {
  Subgroup s{elements};
  std::sort(s.elements.begin(), s.elements.end());
  if (std::adjacent_find(s.elements.begin(), s.elements.end()) != s.elements.end())
    return false;
  if (!s.contains(0)) return false;
  for (int a : s.elements) {
    if (a < 0 || a >= g.order()) return false;
    if (!s.contains(g.inv(a))) return false;
    for (int b : s.elements)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

Subgroup conjugate_subgroup(const Group& g, const Subgroup& h, int a) {
  Subgroup r;
  r.elements.reserve(h.elements.size());
  for (int x : h.elements) r.elements.push_back(g.conj(a, x));
  std::sort(r.elements.begin(), r.elements.end());
  return r;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup r;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(),
                        b.elements.end(), std::back_inserter(r.elements));
  return r;
}

Subgroup normalizer(const Group& g, const Subgroup& h, const Subgroup& within) {
  Subgroup n;
  for (int a : within.elements)
    if (conjugate_subgroup(g, h, a) == h) n.elements.push_back(a);
  return n;
}

int left_coset_rep(const Group& g, int a, const Subgroup& h) {
  int best = g.mul(a, h.elements.front());
  for (int x : h.elements) best = std::min(best, g.mul(a, x));
  return best;
}

std::vector<int> left_coset_reps(const Group& g, const Subgroup& within,
                                 const Subgroup& h) {
  std::set<int> reps;
  for (int a : within.elements) reps.insert(left_coset_rep(g, a, h));
  return {reps.begin(), reps.end()};
}

SubgroupLattice::SubgroupLattice(std::shared_ptr<const Group> g)
    : SubgroupLattice(g, whole_group(*g)) {}

SubgroupLattice::SubgroupLattice(std::shared_ptr<const Group> g, Subgroup ambient)
    : group_(std::move(g)), ambient_(std::move(ambient)) {
  const Group& G = *group_;
  if (!is_subgroup(G, ambient_.elements)) throw InvalidArgument("ambient is not a subgroup");
  std::set<Subgroup> found{trivial_subgroup()};
  std::vector<Subgroup> work{trivial_subgroup()};
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (int x : ambient_.elements) {
      if (work[i].contains(x)) continue;
      std::vector<int> gens = work[i].elements;
      gens.push_back(x);
      Subgroup s = generated_subgroup(G, gens);
      if (found.insert(s).second) work.push_back(s);
    }
  }
  subgroups_.assign(found.begin(), found.end());
  std::sort(subgroups_.begin(), subgroups_.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  const int n = num_subgroups();
  std::map<Subgroup, int> index;
  for (int i = 0; i < n; ++i) index[subgroups_[i]] = i;
  // Subgroups are sorted by (order, lex), so the first unassigned member of a
  // class is its lexicographically least element.
  class_of_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (class_of_[i] >= 0) continue;
    const int c = static_cast<int>(class_reps_.size());
    class_reps_.push_back(i);
    members_.emplace_back();
    std::set<int> mem;
    for (int a : ambient_.elements) mem.insert(index.at(conjugate_subgroup(G, subgroups_[i], a)));
    for (int m : mem) {
      class_of_[m] = c;
      members_[c].push_back(m);
    }
  }
  const int m = num_classes();
  subconj_.assign(m, std::vector<std::optional<int>>(m));
  for (int k = 0; k < m; ++k)
    for (int h = 0; h < m; ++h) {
      const Subgroup& K = class_rep(k);
      const Subgroup& H = class_rep(h);
      if (H.order() % K.order() != 0) continue;
      for (int a : ambient_.elements)
        if (H.includes(conjugate_subgroup(G, K, a))) {
          subconj_[k][h] = a;
          break;
        }
    }
}

int SubgroupLattice::index_of(const Subgroup& h) const {
  auto it = std::lower_bound(subgroups_.begin(), subgroups_.end(), h,
                             [](const Subgroup& a, const Subgroup& b) {
                               if (a.order() != b.order()) return a.order() < b.order();
                               return a.elements < b.elements;
                             });
  if (it == subgroups_.end() || !(*it == h)) return -1;
  return static_cast<int>(it - subgroups_.begin());
}

int SubgroupLattice::class_of(const Subgroup& h) const {
  const int i = index_of(h);
  if (i < 0) throw InvalidArgument("not a subgroup of the lattice's ambient group");
  return class_of_[i];
}

int SubgroupLattice::to_rep(const Subgroup& h) const {
  const Subgroup& rep = class_rep(class_of(h));
  for (int a : ambient_.elements)
    if (conjugate_subgroup(*group_, h, a) == rep) return a;
  throw InvalidArgument("no conjugator to class representative");
}

SubgroupLattice subgroup_lattice(const Group& g) {
  return SubgroupLattice(std::make_shared<const Group>(g));
}

std::vector<int> double_coset(const Group& g, const Subgroup& j, int a,
                              const Subgroup& k) {
  std::set<int> block;
  for (int x : j.elements)
    for (int y : k.elements) block.insert(g.mul(g.mul(x, a), y));
  return {block.begin(), block.end()};
}

std::vector<int> double_cosets(const Group& g, const Subgroup& j, const Subgroup& h,
                               const Subgroup& k) {
  if (!h.includes(j) || !h.includes(k))
    throw InvalidArgument("double cosets need J and K inside H");
  std::vector<int> reps;
  std::set<int> covered;
  for (int a : h.elements) {
    if (covered.count(a)) continue;
    reps.push_back(a);
    for (int x : double_coset(g, j, a, k)) covered.insert(x);
  }
  return reps;
}

Group quotient_group(const Group& g, const Subgroup& n, const Subgroup& h) {
  std::vector<int> reps = left_coset_reps(g, n, h);
  std::map<int, int> index;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) index[reps[i]] = i;
  const int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      t[a][b] = index.at(left_coset_rep(g, g.mul(reps[a], reps[b]), h));
  return Group::from_table(g.name() + "/quotient", std::move(t));
}

Group weyl_group(const SubgroupLattice& l, const Subgroup& h) {
  if (l.index_of(h) < 0) throw InvalidArgument("subgroup not in lattice");
  Subgroup n = normalizer(l.group(), h, l.ambient());
  return quotient_group(l.group(), n, h);
}

std::optional<int> is_subconjugate(const SubgroupLattice& l, const Subgroup& k,
                                   const Subgroup& h) {
  if (h.order() % k.order() != 0) return std::nullopt;
  for (int a : l.ambient().elements)
    if (h.includes(conjugate_subgroup(l.group(), k, a))) return a;
  return std::nullopt;
}

}  // namespace eqv
