#include <gtest/gtest.h>

#include <random>
#include <set>

#include "eqv/burnside.hpp"
#include "eqv/error.hpp"
#include "oracles.hpp"
#include "span_helpers.hpp"

using namespace eqv;
using namespace testing_spans;

namespace {

OrbitCategoryPtr category(const std::string& name) { return OrbitCategory::make(named_group(name)); }

GSet points(const OrbitCategory& oc, int n) { return point_set(oc.group_ptr(), whole_group(oc.group()), n); }
GSet free_orbit(const OrbitCategory& oc) {
  return coset_set(oc.group_ptr(), whole_group(oc.group()), trivial_subgroup());
}

GMap constant_map(const GSet& x, const GSet& pt) { return GMap{x, pt, std::vector<int>(x.size(), 0)}; }

}  // namespace

TEST(Burnside, ComposeTransferSpansOnC2) {
  const auto oc = category("C2");
  const GSet pt = points(*oc, 1), fr = free_orbit(*oc);
  const Span t = span_from_maps(constant_map(fr, pt), constant_map(fr, pt));
  const Span c = compose_spans(t, t);
  EXPECT_TRUE(is_span(c));
  EXPECT_EQ(c.apex.size(), 4);
  const GSet two = disjoint_union(fr, fr);
  EXPECT_TRUE(spans_isomorphic(c, span_from_maps(constant_map(two, pt), constant_map(two, pt))));
  EXPECT_EQ(level_iso_class(*oc, c.apex), level_iso_class(*oc, two));
}

TEST(Burnside, IdentityAndInertActiveComposites) {
  const auto oc = category("C4");
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const GSet x = random_foot(*oc, 6, rng), y = random_foot(*oc, 6, rng);
    const Span s = random_span(*oc, x, y, 8, rng);
    EXPECT_TRUE(spans_isomorphic(compose_spans(identity_span(x), s), s));
    EXPECT_TRUE(spans_isomorphic(compose_spans(s, identity_span(y)), s));
    const GMap f{s.apex, s.right, s.fwd}, b{s.apex, s.left, s.back};
    EXPECT_TRUE(spans_isomorphic(compose_spans(restriction_span(b), transfer_span(f)), s));
    const Span inert = span_from_maps(identity_gmap(s.apex), identity_gmap(s.apex));
    EXPECT_TRUE(spans_isomorphic(compose_spans(inert, transfer_span(f)), transfer_span(f)));
  }
}

TEST(Burnside, SpansIsomorphicExamples) {
  const auto oc = category("C2");
  const GSet pt = points(*oc, 1), two = points(*oc, 2), fr = free_orbit(*oc);
  const Span a = span_from_maps(constant_map(fr, pt), constant_map(fr, pt));
  const Span b = span_from_maps(constant_map(two, pt), constant_map(two, pt));
  EXPECT_TRUE(spans_isomorphic(a, a));
  EXPECT_FALSE(spans_isomorphic(a, b));

  const Span id = span_from_maps(identity_gmap(two), constant_map(two, pt));
  const Span swapped = span_from_maps(GMap{two, two, {1, 0}}, constant_map(two, pt));
  const auto phi = span_isomorphism(id, swapped);
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ(*phi, (std::vector<int>{1, 0}));
  const Span collapsed = span_from_maps(GMap{two, two, {0, 0}}, constant_map(two, pt));
  EXPECT_FALSE(spans_isomorphic(id, collapsed));

  const Span canon = canonicalize_span(a);
  EXPECT_TRUE(spans_isomorphic(a, canon));
  EXPECT_THROW(spans_isomorphic(a, identity_span(fr)), InvalidArgument);
}

TEST(Burnside, SpanCountsOnC2) {
  const auto oc = category("C2");
  const GSet pt = points(*oc, 1), fr = free_orbit(*oc), none = points(*oc, 0);
  // multisets of the two orbits over *: sizes 1 and 2
  EXPECT_EQ(span_counts(*oc, pt, pt, 6), (std::vector<std::int64_t>{1, 1, 2, 2, 3, 3, 4}));
  EXPECT_EQ(series_from_atoms(span_atoms(*oc, pt, pt), 6), span_counts(*oc, pt, pt, 6));
  EXPECT_EQ(span_counts(*oc, fr, pt, 6), span_counts(*oc, pt, fr, 6));
  const auto r = check_semiadditivity(*oc, fr, none, pt, 6);
  EXPECT_TRUE(r.additive && r.dual && r.atoms_match) << r.message;
  EXPECT_EQ(span_counts(*oc, disjoint_union(fr, none), pt, 6), span_counts(*oc, fr, pt, 6));
}

TEST(Burnside, SemiadditivityOnSampledFeet) {
  std::mt19937 rng(5);
  for (const std::string name : {"C2", "C3", "C4", "S3", "C2xC2"}) {
    const auto oc = category(name);
    for (int trial = 0; trial < 4; ++trial) {
      const GSet x = random_gset(*oc, 3, rng), x2 = random_gset(*oc, 3, rng), y = random_gset(*oc, 3, rng);
      const auto r = check_semiadditivity(*oc, x, x2, y, 4);
      EXPECT_TRUE(r.additive) << name << ": " << r.message;
      EXPECT_TRUE(r.dual) << name << ": " << r.message;
      EXPECT_TRUE(r.atoms_match) << name << ": " << r.message;
    }
  }
}

TEST(Burnside, SmashExamples) {
  const auto oc = category("C2");
  const GSet pt = points(*oc, 1), fr = free_orbit(*oc);
  const Span t = span_from_maps(constant_map(fr, pt), constant_map(fr, pt));
  const Span u = smash_spans(t, identity_span(pt));
  EXPECT_TRUE(u.left == t.left && u.right == t.right);
  EXPECT_TRUE(spans_isomorphic(u, t));
  const Span tt = smash_spans(t, t);
  EXPECT_TRUE(is_span(tt));
  const GSet two = disjoint_union(fr, fr);
  EXPECT_EQ(level_iso_class(*oc, tt.apex), level_iso_class(*oc, two));
}

TEST(Burnside, SmashPreservesComposition) {
  for (const std::string name : {"C2", "C3", "S3"}) {
    const auto oc = category(name);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      const GSet x = random_foot(*oc, 3, rng), y = random_foot(*oc, 3, rng), z = random_foot(*oc, 3, rng);
      const GSet x2 = random_foot(*oc, 3, rng), y2 = random_foot(*oc, 3, rng), z2 = random_foot(*oc, 3, rng);
      const Span s1 = random_span(*oc, x, y, 4, rng), s2 = random_span(*oc, y, z, 4, rng);
      const Span t1 = random_span(*oc, x2, y2, 4, rng), t2 = random_span(*oc, y2, z2, 4, rng);
      const Span lhs = smash_spans(compose_spans(s1, s2), compose_spans(t1, t2));
      const Span rhs = compose_spans(smash_spans(s1, t1), smash_spans(s2, t2));
      EXPECT_TRUE(spans_isomorphic(lhs, rhs)) << name << " trial " << trial;
    }
  }
}

TEST(Burnside, AssociativityAndIdentityOnRandomTriples) {
  for (const std::string name : {"C4", "S3"}) {
    const auto oc = category(name);
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
      const GSet w = random_foot(*oc, 4, rng), x = random_foot(*oc, 4, rng);
      const GSet y = random_foot(*oc, 4, rng), z = random_foot(*oc, 4, rng);
      const Span s1 = random_span(*oc, w, x, 6, rng), s2 = random_span(*oc, x, y, 6, rng);
      const Span s3 = random_span(*oc, y, z, 6, rng);
      const Span a = compose_spans(compose_spans(s1, s2), s3);
      const Span b = compose_spans(s1, compose_spans(s2, s3));
      ASSERT_TRUE(is_span(a));
      ASSERT_TRUE(spans_isomorphic(a, b)) << name << " trial " << trial;
      ASSERT_TRUE(spans_isomorphic(compose_spans(identity_span(w), s1), s1));
      ASSERT_TRUE(spans_isomorphic(compose_spans(s1, identity_span(x)), s1));
    }
  }
}

TEST(Burnside, ComposeThroughMiddleIsomorphism) {
  const auto oc = category("C2");
  const GSet pt = points(*oc, 1), fr = free_orbit(*oc);
  const GSet a = disjoint_union(pt, fr), b = disjoint_union(fr, pt);
  const Span s1 = span_from_maps(identity_gmap(a), identity_gmap(a));
  const Span s2 = span_from_maps(identity_gmap(b), constant_map(b, pt));
  EXPECT_THROW(compose_spans(s1, s2), InvalidArgument);
  const Span c = compose_spans(s1, s2, {2, 0, 1});
  EXPECT_TRUE(spans_isomorphic(c, span_from_maps(identity_gmap(a), constant_map(a, pt))));
  EXPECT_THROW(compose_spans(s1, s2, {0, 1, 2}), InvalidArgument);
}

TEST(Burnside, IndexingConstraintOnForwardLegs) {
  const auto oc = category("C2");
  const auto u = std::make_shared<SetUniverse>(oc, 4);
  const GSet pt = points(*oc, 1), fr = free_orbit(*oc);
  const Span t = span_from_maps(constant_map(fr, pt), constant_map(fr, pt));
  const Span r = span_from_maps(constant_map(fr, pt), identity_gmap(fr));
  EXPECT_TRUE(span_in(complete_system(u), t));
  EXPECT_FALSE(span_in(minimal_system(u), t));
  EXPECT_TRUE(span_in(minimal_system(u), r));
}

TEST(Burnside, TruncatedBurnsideIsValid) {
  for (const auto& [name, cap] : std::vector<std::pair<std::string, int>>{
           {"e", 4}, {"C2", 4}, {"C3", 3}, {"C4", 2}, {"C2xC2", 1}, {"S3", 2}}) {
    const auto oc = category(name);
    EXPECT_EQ(truncated_burnside(oc, cap).violation(), "") << name;
    EXPECT_EQ(terminal_mackey(oc).violation(), "") << name;
  }
  EXPECT_THROW(truncated_burnside(category("C2"), 0), InvalidArgument);
  EXPECT_THROW(truncated_burnside(category("D4"), 8), CapExceeded);
}

TEST(Burnside, TruncatedBurnsideMatchesRestrictionAndInduction) {
  for (const std::string name : {"C2", "C4", "S3", "C2xC2"}) {
    const auto oc = category(name);
    const int cap = 3;
    const SemiMackey m = truncated_burnside(oc, cap);
    for (int id = 0; id < oc->num_morphisms(); ++id) {
      const auto& mor = oc->morphism(id);
      if (mor.elt != 0) continue;
      const Subgroup& k = oc->rep(mor.src);
      const Subgroup& h = oc->rep(mor.tgt);
      const SubgroupLattice lk(oc->group_ptr(), k), lh(oc->group_ptr(), h);
      // single orbits avoid saturation
      for (int t = 0; t < oc->num_types(mor.tgt); ++t) {
        GSetIso iso;
        iso.counts.assign(lh.num_classes(), 0);
        iso.counts[t] = 1;
        const GSetIso r = iso_class(restrict(realize(iso, lh), k), lk);
        std::vector<int> want(r.counts.size());
        for (std::size_t i = 0; i < want.size(); ++i) want[i] = std::min(cap, r.counts[i]);
        int enc_in = 0, enc_want = 0;
        for (int c : iso.counts) enc_in = enc_in * (cap + 1) + c;
        for (int c : want) enc_want = enc_want * (cap + 1) + c;
        EXPECT_EQ(m.values().restrict(id, enc_in), enc_want) << name << " morphism " << id;
      }
      for (int t = 0; t < oc->num_types(mor.src); ++t) {
        GSetIso iso;
        iso.counts.assign(lk.num_classes(), 0);
        iso.counts[t] = 1;
        const GSetIso r = iso_class(induce(realize(iso, lk), h), lh);
        int enc_in = 0, enc_want = 0;
        for (int c : iso.counts) enc_in = enc_in * (cap + 1) + c;
        for (int c : r.counts) enc_want = enc_want * (cap + 1) + std::min(cap, c);
        EXPECT_EQ(m.transfer(id, enc_in), enc_want) << name << " morphism " << id;
      }
    }
  }
}

TEST(Burnside, TransferSpanOnC2Burnside) {
  const auto oc = category("C2");
  const SemiMackey m = truncated_burnside(oc, 4);
  const GSet pt = points(*oc, 1), fr = free_orbit(*oc);
  const Span t = transfer_span(constant_map(fr, pt));
  // M(C2/e) = e-sets by size; M(*) = C2-sets by (fixed orbits, free orbits)
  const int fixed_type = oc->point_type(oc->top());
  for (int n = 0; n <= 4; ++n) {
    const MackeyElement out = evaluate(m, t, {n});
    ASSERT_EQ(out.size(), 1u);
    std::vector<int> counts(2, 0);
    counts[1 - fixed_type] = n;
    EXPECT_EQ(out[0], counts[0] * 5 + counts[1]);
  }
  const Span r = restriction_span(constant_map(fr, pt));
  EXPECT_EQ(evaluate(m, r, {1 + 5 * 1}), (MackeyElement{3}));  // * + C2/e restricts to 3 points
}

TEST(Burnside, EvaluationIsFunctorial) {
  for (const auto& [name, cap] : std::vector<std::pair<std::string, int>>{{"C2", 4}, {"C4", 2}, {"S3", 2}}) {
    const auto oc = category(name);
    const SemiMackey m = truncated_burnside(oc, cap);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      const GSet x = random_foot(*oc, 4, rng), y = random_foot(*oc, 4, rng), z = random_foot(*oc, 4, rng);
      const Span s1 = random_span(*oc, x, y, 6, rng), s2 = random_span(*oc, y, z, 6, rng);
      const MackeyElement e = random_element(m, x, rng);
      ASSERT_EQ(evaluate(m, compose_spans(s1, s2), e), evaluate(m, s2, evaluate(m, s1, e)))
          << name << " trial " << trial;
      ASSERT_EQ(evaluate(m, identity_span(x), e), e);
    }
  }
}

TEST(Burnside, ProductPreservation) {
  for (const std::string name : {"C2", "C3", "S3"}) {
    const auto oc = category(name);
    const SemiMackey m = truncated_burnside(oc, 2);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      const GSet a = random_gset(*oc, 3, rng), b = random_gset(*oc, 3, rng);
      const GSet ab = disjoint_union(a, b);
      if (mackey_size(m, ab) > 20000) continue;
      GMap ia{a, ab, {}}, ib{b, ab, {}};
      for (int p = 0; p < a.size(); ++p) ia.f.push_back(p);
      for (int p = 0; p < b.size(); ++p) ib.f.push_back(a.size() + p);
      ASSERT_TRUE(ia.is_equivariant() && ib.is_equivariant());
      std::set<std::pair<MackeyElement, MackeyElement>> seen;
      const auto elems = mackey_elements(m, ab);
      for (const auto& e : elems) seen.insert({mackey_restrict(m, ia, e), mackey_restrict(m, ib, e)});
      EXPECT_EQ(seen.size(), elems.size());
      EXPECT_EQ(static_cast<std::int64_t>(seen.size()), mackey_size(m, a) * mackey_size(m, b));
      // orbitwise reconstruction
      const OrbitBasis basis = orbit_basis(*oc, ab);
      for (const auto& e : elems)
        for (std::size_t o = 0; o < basis.level.size(); ++o) {
          const GSet orbit = coset_set(oc->group_ptr(), whole_group(oc->group()), oc->rep(basis.level[o]));
          GMap inc{orbit, ab, std::vector<int>(orbit.size())};
          for (int g = 0; g < oc->group().order(); ++g) inc.f[orbit.act(g, 0)] = ab.act(g, basis.base[o]);
          ASSERT_TRUE(inc.is_equivariant());
          EXPECT_EQ(mackey_restrict(m, inc, e), (MackeyElement{e[o]}));
        }
    }
  }
}

TEST(Burnside, ValidatorRejectsMutations) {
  const auto oc = category("C2");
  const SemiMackey m = truncated_burnside(oc, 2);
  int rejected = 0, total = 0;
  for (int id = 0; id < oc->num_morphisms(); ++id)
    for (std::size_t x = 0; x < m.transfers()[id].size(); ++x) {
      auto tr = m.transfers();
      const int tgt_size = m.values().size(oc->morphism(id).tgt);
      tr[id][x] = (tr[id][x] + 1) % tgt_size;
      ++total;
      if (!SemiMackey(m.values(), tr).violation().empty()) ++rejected;
    }
  EXPECT_EQ(rejected, total);

  // additive and functorial transfers that break the double coset formula
  const auto c4 = category("C4");
  const SemiMackey b = truncated_burnside(c4, 1);
  auto tr = b.transfers();
  for (int id = 0; id < c4->num_morphisms(); ++id)
    if (c4->morphism(id).src != c4->morphism(id).tgt)
      for (int& v : tr[id]) v = 0;
  EXPECT_NE(SemiMackey(b.values(), tr).violation().find("double coset"), std::string::npos);

  EXPECT_THROW(SemiMackey(underlying_sets(b.values()), b.transfers()), InvalidArgument);
  EXPECT_THROW(SemiMackey(b.values(), {}), InvalidArgument);
}
