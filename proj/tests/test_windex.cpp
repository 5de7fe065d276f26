#include <gtest/gtest.h>

#include <random>
#include <set>

#include "eqv/error.hpp"
#include "eqv/windex.hpp"
#include "oracles.hpp"

using namespace eqv;

namespace {

SetUniversePtr universe(const std::string& name, int bound) {
  return std::make_shared<SetUniverse>(OrbitCategory::make(named_group(name)), bound);
}

oracle::Family family_of(const WeakIndexingSystem& w) {
  oracle::Family f(w.category().num_levels());
  for (int h = 0; h < w.category().num_levels(); ++h)
    for (const LevelSet& s : w.admissible(h)) f[h].insert(s.counts);
  return f;
}

std::vector<char> bits_of(const SetUniverse& u, const oracle::Family& f) {
  std::vector<char> bits(u.total_size(), 0);
  for (int h = 0; h < u.num_levels(); ++h)
    for (const auto& c : f[h]) bits[u.offset(h) + u.index_of(LevelSet{h, c})] = 1;
  return bits;
}

/// Every family passing the oracle, by filtering all subsets of the universe.
std::vector<std::vector<char>> subset_filter(const SetUniverse& u) {
  const int n = u.total_size();
  std::vector<std::vector<char>> out;
  for (long mask = 0; mask < (1L << n); ++mask) {
    oracle::Family f(u.num_levels());
    for (int h = 0; h < u.num_levels(); ++h)
      for (int i = 0; i < u.level_size(h); ++i)
        if (mask >> (u.offset(h) + i) & 1) f[h].insert(u.set(h, i).counts);
    if (oracle::is_weak_indexing(u.category(), u.bound(), f)) out.push_back(bits_of(u, f));
  }
  return out;
}

LevelSet level_set(const OrbitCategory& oc, int h, std::vector<int> counts) {
  LevelSet s{h, std::move(counts)};
  EXPECT_EQ(static_cast<int>(s.counts.size()), oc.num_types(h));
  return s;
}

/// Disjoint union of two maps of G-sets.
GMap disjoint_maps(const GMap& f, const GMap& g) {
  GMap out{disjoint_union(f.source, g.source), disjoint_union(f.target, g.target), f.f};
  for (int x : g.f) out.f.push_back(x + f.target.size());
  return out;
}

}  // namespace

TEST(Windex, ValidateExamples) {
  const auto u = universe("e", 6);
  EXPECT_TRUE(validate(complete_system(u)).empty());
  EXPECT_TRUE(validate(minimal_system(u)).empty());
  EXPECT_TRUE(validate(empty_system(u)).empty());
  // cardinalities {1, 2}: the coproduct of 2 over (2, 2) is 4
  std::vector<char> bits(u->total_size(), 0);
  bits[1] = bits[2] = 1;
  const auto report = validate(WeakIndexingSystem(u, bits));
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report[0].kind, "coproduct");
  EXPECT_EQ(report[0].set.counts, std::vector<int>{2});
  EXPECT_GT(report[0].result.counts[0], 2);
  for (const LevelSet& p : report[0].parts) EXPECT_TRUE(p.counts[0] == 1 || p.counts[0] == 2);

  const auto c4 = universe("C4", 8);
  EXPECT_TRUE(validate(complete_system(c4)).empty());
  EXPECT_TRUE(validate(minimal_system(c4)).empty());
}

TEST(Windex, ValidateMatchesOracleOnRandomFamilies) {
  std::mt19937 rng(21);
  for (const auto& [name, bound] : {std::pair{"C2", 4}, std::pair{"C3", 4}, std::pair{"C4", 4}, std::pair{"S3", 6}}) {
    const auto u = universe(name, bound);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<char> bits(u->total_size());
      // sparse random families are mostly invalid; closures of them are valid
      for (auto& b : bits) b = rng() % 4 == 0;
      if (trial % 2) bits = closure(*u, bits);
      const WeakIndexingSystem w(u, bits);
      EXPECT_EQ(validate(w).empty(), oracle::is_weak_indexing(u->category(), bound, family_of(w))) << name;
    }
  }
}

TEST(Windex, ClosureIsLeastSystemContainingGenerators) {
  const auto u = universe("C2", 4);
  const auto valid = subset_filter(*u);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<LevelSet> gens;
    for (int h = 0; h < u->num_levels(); ++h)
      for (int i = 0; i < u->level_size(h); ++i)
        if (rng() % 6 == 0) gens.push_back(u->set(h, i));
    const auto w = from_generators(u, gens);
    EXPECT_TRUE(validate(w).empty());
    std::vector<char> least(u->total_size(), 1);
    for (const auto& v : valid) {
      bool contains = true;
      for (const LevelSet& g : gens) contains = contains && v[u->offset(g.level) + u->index_of(g)];
      if (contains)
        for (int i = 0; i < u->total_size(); ++i) least[i] = least[i] && v[i];
    }
    EXPECT_EQ(w.bits(), least);
  }
  EXPECT_EQ(from_generators(u, {}), empty_system(u));
}

TEST(Windex, GeneratorExamplesOnC2) {
  const auto u = universe("C2", 6);
  const auto& oc = u->category();
  // level 1 is C2, its types: 0 = free orbit, 1 = point
  const auto w = from_generators(u, {level_set(oc, 1, {1, 0})});
  for (const LevelSet& s : u->sets(1)) {
    // n free orbits and m points, at least one point when n > 0 is forced by the unit
    const bool expect = s.counts[0] >= 1 || s.counts[1] == 1;
    if (cardinality(oc, s) <= 2) EXPECT_EQ(w.contains(s), expect) << s.counts[0] << " " << s.counts[1];
  }
  EXPECT_TRUE(w.contains(point(oc, 0, 2)));
  // folds everywhere
  const auto fold = from_generators(u, {point(oc, 0, 2), point(oc, 1, 2)});
  for (int h = 0; h < 2; ++h) {
    EXPECT_TRUE(fold.contains(point(oc, h, 5)));
    EXPECT_FALSE(fold.contains(empty_set(oc, h)));
  }
  EXPECT_FALSE(fold.contains(level_set(oc, 1, {1, 0})));
  EXPECT_TRUE(oracle::is_weak_indexing(oc, 6, family_of(fold)));
}

TEST(Windex, EnumerationMatchesSubsetFilter) {
  for (const auto& [name, bound] : {std::pair{"e", 5}, std::pair{"C2", 4}}) {
    const auto u = universe(name, bound);
    const auto systems = enumerate(u, EnumMode::Truncated);
    std::set<std::vector<char>> mine;
    for (const auto& w : systems) mine.insert(w.bits());
    EXPECT_EQ(mine.size(), systems.size()) << name;
    const auto brute = subset_filter(*u);
    EXPECT_EQ(mine, std::set<std::vector<char>>(brute.begin(), brute.end())) << name;
  }
}

TEST(Windex, SparseEnumerationIsTheAeuPart) {
  const auto u = universe("C2", 4);
  std::set<std::vector<char>> aeu;
  for (const auto& w : enumerate(u, EnumMode::Truncated))
    if (is_aeu(w)) aeu.insert(w.bits());
  std::set<std::vector<char>> sparse;
  for (const auto& w : enumerate(u, EnumMode::Sparse)) {
    EXPECT_EQ(w.repr(), Repr::Sparse);
    sparse.insert(w.bits());
  }
  EXPECT_EQ(sparse, aeu);
}

TEST(Windex, ExactIndexingMatchesTransferSystems) {
  for (const auto& name : {"e", "C2", "C3", "C4", "C2xC2", "S3"}) {
    const auto oc = OrbitCategory::make(named_group(name));
    const auto u = std::make_shared<SetUniverse>(oc, 2 * std::max(1, oc->group().order()));
    const auto systems = enumerate(u, EnumMode::ExactIndexing);
    std::set<std::vector<char>> mine;
    for (const auto& w : systems) {
      EXPECT_TRUE(validate(w).empty());
      EXPECT_TRUE(is_indexing_system(w));
      mine.insert(w.bits());
    }
    EXPECT_EQ(mine.size(), systems.size());
    std::set<std::vector<char>> brute;
    for (const auto& t : oracle::transfer_systems(*oc)) {
      const auto w = indexing_completion(u, {t.begin(), t.end()});
      // the completion's transitive admissibles are exactly the relation
      for (int h = 0; h < oc->num_levels(); ++h)
        for (int ty = 0; ty < oc->num_types(h); ++ty) {
          if (ty == oc->point_type(h)) continue;
          LevelSet s = empty_set(*oc, h);
          s.counts[ty] = 1;
          EXPECT_EQ(w.contains(s), t.count({h, ty}) > 0) << name;
        }
      brute.insert(w.bits());
    }
    EXPECT_EQ(mine, brute) << name;
  }
  EXPECT_EQ(enumerate(universe("e", 4), EnumMode::ExactIndexing).size(), 1u);
  EXPECT_EQ(enumerate(universe("C2", 4), EnumMode::ExactIndexing).size(), 2u);
}

TEST(Windex, FamiliesAndPredicates) {
  const auto u = universe("C2", 6);
  const auto& oc = u->category();
  const auto complete = complete_system(u);
  const Families fc = families(complete);
  EXPECT_EQ(fc.colors, (std::vector<int>{0, 1}));
  EXPECT_EQ(fc.units, (std::vector<int>{0, 1}));
  EXPECT_EQ(fc.folds, (std::vector<int>{0, 1}));
  EXPECT_TRUE(is_unital(complete));
  EXPECT_TRUE(is_indexing_system(complete));

  const Families fm = families(minimal_system(u));
  EXPECT_EQ(fm.colors, (std::vector<int>{0, 1}));
  EXPECT_TRUE(fm.units.empty());
  EXPECT_TRUE(fm.folds.empty());
  EXPECT_TRUE(is_aeu(minimal_system(u)));
  EXPECT_FALSE(is_unital(minimal_system(u)));

  const auto w = from_generators(u, {empty_set(oc, 0), empty_set(oc, 1), point(oc, 0, 2)});
  const Families f = families(w);
  EXPECT_EQ(f.units, (std::vector<int>{0, 1}));
  EXPECT_EQ(f.folds, (std::vector<int>{0}));
  EXPECT_TRUE(is_unital(w));
  EXPECT_FALSE(is_indexing_system(w));

  const auto e = universe("e", 5);
  EXPECT_FALSE(has_one_color(empty_system(e)));
  // {0, 1} is unital; {1, 2, ...} is not almost essentially unital
  EXPECT_TRUE(is_unital(from_generators(e, {empty_set(e->category(), 0)})));
  EXPECT_FALSE(is_aeu(from_generators(e, {point(e->category(), 0, 2)})));
}

TEST(Windex, FamiliesAreDownwardClosed) {
  for (const auto& [name, bound] : {std::pair{"C4", 8}, std::pair{"C2xC2", 8}}) {
    const auto u = universe(name, bound);
    const auto& l = u->category().lattice();
    std::vector<WeakIndexingSystem> systems = enumerate(u, EnumMode::ExactIndexing);
    if (std::string(name) == "C4") {
      const auto sparse = enumerate(u, EnumMode::Sparse);
      systems.insert(systems.end(), sparse.begin(), sparse.end());
    }
    for (const auto& w : systems) {
      const Families f = families(w);
      for (const auto* fam : {&f.colors, &f.units, &f.folds})
        for (int h : *fam)
          for (int k = 0; k < l.num_classes(); ++k)
            if (l.subconjugate(k, h)) EXPECT_NE(std::find(fam->begin(), fam->end(), k), fam->end()) << name;
      for (int h : f.units) EXPECT_NE(std::find(f.colors.begin(), f.colors.end(), h), f.colors.end());
      for (int h : f.folds) EXPECT_NE(std::find(f.colors.begin(), f.colors.end(), h), f.colors.end());
    }
  }
}

TEST(Windex, MembershipOfConcreteMaps) {
  const auto u = universe("C2", 6);
  const auto& oc = u->category();
  const auto w = from_generators(u, {level_set(oc, 1, {1, 0})});
  // fold 2 * pt -> pt at the top level
  const LevelSet two = point(oc, 1, 2);
  EXPECT_EQ(is_member(w, oracle::map_to_orbit(oc, two)), w.contains(two));
  EXPECT_EQ(is_member(complete_system(u), oracle::map_to_orbit(oc, two)), true);
  EXPECT_EQ(is_member(minimal_system(u), oracle::map_to_orbit(oc, two)), false);
  // one admissible fiber and one inadmissible fiber
  const GMap good = oracle::map_to_orbit(oc, level_set(oc, 1, {2, 0}));
  const GMap bad = oracle::map_to_orbit(oc, point(oc, 1, 3));
  ASSERT_TRUE(is_member(w, good));
  ASSERT_FALSE(w.contains(point(oc, 1, 3)));
  EXPECT_FALSE(is_member(w, disjoint_maps(good, bad)));
  // fibers beyond the bound
  EXPECT_THROW(is_member(w, oracle::map_to_orbit(oc, point(oc, 1, 7))), CapExceeded);
}

TEST(Windex, CategoryAxiomsOnSmallMaps) {
  for (const auto& name : {"C2", "C4"}) {
    const auto u = universe(name, 8);
    const auto& oc = u->category();
    const int top = oc.top();
    // small G-sets and all maps between them
    std::vector<GSet> sets;
    for (const LevelSet& s : enumerate_sets(oc, top, 3)) sets.push_back(to_vset(oc, realize(oc, s)));
    auto systems = enumerate(u, EnumMode::Sparse);
    for (const auto& w : systems) {
      const Families fam = families(w);
      for (const GSet& t : sets)
        for (const GSet& s : sets)
          for (const auto& fv : equivariant_maps(t, s)) {
            const GMap f{t, s, fv};
            const bool mf = is_member(w, f);
            // IC-a: pullbacks along maps into the codomain
            if (mf)
              for (const GSet& s2 : sets)
                for (const auto& gv : equivariant_maps(s2, s)) {
                  const Pullback pb = pullback(f, GMap{s2, s, gv});
                  EXPECT_TRUE(is_member(w, pb.right)) << name;
                }
            // IC-b: coproducts of maps
            for (const GSet& s2 : sets)
              for (const GSet& t2 : sets)
                for (const auto& gv : equivariant_maps(t2, s2)) {
                  const GMap g{t2, s2, gv};
                  EXPECT_EQ(is_member(w, disjoint_maps(f, g)), mf && is_member(w, g)) << name;
                }
          }
      // IC-c: automorphisms of sets all of whose orbits are colors
      for (const GSet& s : sets) {
        bool colored = true;
        for (const auto& o : orbit_decomposition(s, oc.lattice()))
          colored = colored && std::find(fam.colors.begin(), fam.colors.end(), o.stabilizer_class) != fam.colors.end();
        if (!colored) continue;
        for (const auto& a : automorphisms(s)) EXPECT_TRUE(is_member(w, GMap{s, s, a})) << name;
      }
    }
  }
}

TEST(Windex, SystemCategoryRoundTrip) {
  for (const auto& name : {"C2", "C4"}) {
    const auto u = universe(name, 8);
    const auto& oc = u->category();
    auto systems = enumerate(u, EnumMode::Sparse);
    const auto idx = enumerate(u, EnumMode::ExactIndexing);
    systems.insert(systems.end(), idx.begin(), idx.end());
    for (const auto& w : systems) {
      std::vector<char> rebuilt(u->total_size(), 0);
      for (int h = 0; h < oc.num_levels(); ++h)
        for (int i = 0; i < u->level_size(h); ++i)
          rebuilt[u->offset(h) + i] = is_member(w, oracle::map_to_orbit(oc, u->set(h, i)));
      EXPECT_EQ(rebuilt, w.bits()) << name << " " << describe(w);
    }
  }
}

TEST(Windex, LatticeOperationsOnEnumeratedPosets) {
  for (const auto& [name, bound, mode] :
       {std::tuple{"C2", 4, EnumMode::Truncated}, std::tuple{"C2", 8, EnumMode::Sparse},
        std::tuple{"C4", 8, EnumMode::Sparse}, std::tuple{"C4", 8, EnumMode::ExactIndexing}}) {
    const auto u = universe(name, bound);
    const auto ws = enumerate(u, mode);
    const int n = static_cast<int>(ws.size());
    std::vector<std::vector<char>> le(n, std::vector<char>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        le[i][j] = leq(ws[i], ws[j]);
        EXPECT_EQ(le[i][j], leq_truncated(ws[i], ws[j]));
      }
    for (int i = 0; i < n; ++i) {
      EXPECT_TRUE(le[i][i]);
      for (int j = 0; j < n; ++j) {
        if (i != j) EXPECT_FALSE(le[i][j] && le[j][i]);
        for (int k = 0; k < n; ++k)
          if (le[i][j] && le[j][k]) EXPECT_TRUE(le[i][k]);
      }
    }
    // join and meet are the least upper and greatest lower bounds; when the
    // enumerated family is closed under them they land in it
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto jn = join(ws[i], ws[j]);
        const auto mt = meet(ws[i], ws[j]);
        EXPECT_TRUE(validate(jn).empty());
        EXPECT_TRUE(validate(mt).empty());
        EXPECT_TRUE(leq_truncated(ws[i], jn) && leq_truncated(ws[j], jn));
        EXPECT_TRUE(leq_truncated(mt, ws[i]) && leq_truncated(mt, ws[j]));
        for (int k = 0; k < n; ++k) {
          if (le[i][k] && le[j][k]) EXPECT_TRUE(leq_truncated(jn, ws[k]));
          if (le[k][i] && le[k][j]) EXPECT_TRUE(leq_truncated(ws[k], mt));
        }
      }
    for (const auto& w : ws) {
      EXPECT_EQ(join(w, w), w);
      EXPECT_EQ(meet(w, w), w);
    }
  }
  const auto u = universe("C4", 8);
  EXPECT_EQ(join(minimal_system(u), complete_system(u)), complete_system(u));
}

TEST(Windex, JoinExampleOnC2) {
  const auto u = universe("C2", 4);
  const auto& oc = u->category();
  const auto a = from_generators(u, {level_set(oc, 1, {1, 0})});
  const auto b = from_generators(u, {point(oc, 1, 2)});
  const auto j = join(a, b);
  EXPECT_TRUE(leq(a, j) && leq(b, j));
  EXPECT_FALSE(j == a);
  EXPECT_FALSE(j == b);
  // least valid family containing both, by subset filter
  std::vector<char> least(u->total_size(), 1);
  for (const auto& v : subset_filter(*u)) {
    bool contains = true;
    for (int i = 0; i < u->total_size(); ++i)
      if ((a.bits()[i] || b.bits()[i]) && !v[i]) contains = false;
    if (contains)
      for (int i = 0; i < u->total_size(); ++i) least[i] = least[i] && v[i];
  }
  EXPECT_EQ(j.bits(), least);
}

TEST(Windex, SparseAndIndexingCriteriaAgreeWithContainment) {
  const auto u = universe("C4", 8);
  const auto sparse = enumerate(u, EnumMode::Sparse);
  for (const auto& a : sparse)
    for (const auto& b : sparse) EXPECT_EQ(leq(a, b), leq_truncated(a, b));
  const auto idx = enumerate(u, EnumMode::ExactIndexing);
  for (const auto& a : idx) {
    for (const auto& b : idx) EXPECT_EQ(leq_indexing(a, b), leq_truncated(a, b));
    for (const auto& b : sparse) EXPECT_EQ(leq_indexing(a, b), leq_truncated(a, b));
  }
}

TEST(Windex, SparseGeneratorsRegenerate) {
  const auto u = universe("C4", 8);
  for (const auto& w : enumerate(u, EnumMode::Sparse)) {
    std::vector<LevelSet> gens;
    for (const auto& level : w.sparse_generators()) gens.insert(gens.end(), level.begin(), level.end());
    EXPECT_EQ(from_generators(u, gens), w);
  }
  // two systems with the same sparse sets (2 * pt excluded), told apart by the fold
  const auto e = universe("e", 4);
  const auto& oc = e->category();
  const auto all = complete_system(e);
  const auto unit = from_generators(e, {empty_set(oc, 0)});
  EXPECT_TRUE(is_aeu(all) && is_aeu(unit));
  EXPECT_FALSE(leq(all, unit));
  EXPECT_TRUE(leq(unit, all));
}

TEST(Windex, Hasse) {
  const auto u = universe("C2", 4);
  const auto idx = enumerate(u, EnumMode::ExactIndexing);
  ASSERT_EQ(idx.size(), 2u);
  const auto edges = hasse(idx);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(idx[edges[0].upper], complete_system(u));
  EXPECT_TRUE(hasse({idx[0]}).empty());
  EXPECT_NE(hasse_dot(idx, edges).find("->"), std::string::npos);

  const auto sparse = enumerate(universe("C4", 8), EnumMode::Sparse);
  const auto e2 = hasse(sparse);
  for (const auto& e : e2) EXPECT_TRUE(leq(sparse[e.lower], sparse[e.upper]) && !(sparse[e.lower] == sparse[e.upper]));
  // the one-color slice has the minimal system at the bottom and the complete one on top
  const auto c4 = universe("C4", 8);
  EXPECT_NE(std::find(sparse.begin(), sparse.end(), minimal_system(c4)), sparse.end());
  EXPECT_NE(std::find(sparse.begin(), sparse.end(), complete_system(c4)), sparse.end());
  for (const auto& w : sparse)
    if (has_one_color(w)) EXPECT_TRUE(leq(minimal_system(c4), w) && leq(w, complete_system(c4)));
}

TEST(Windex, Errors) {
  const auto u = universe("C2", 4);
  const auto v = universe("C2", 6);
  EXPECT_THROW(join(complete_system(u), complete_system(v)), InvalidArgument);
  EXPECT_THROW(complete_system(u).contains(point(u->category(), 1, 5)), CapExceeded);
  EXPECT_THROW(from_generators(u, {point(u->category(), 1, 5)}), CapExceeded);
  const auto w = universe("C4", 8);
  EXPECT_THROW(join(complete_system(u), complete_system(w)), InvalidArgument);
}
