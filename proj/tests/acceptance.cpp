// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "eqv/algebra.hpp"
#include "eqv/burnside.hpp"
#include "eqv/error.hpp"
#include "eqv/io.hpp"
#include "oracles.hpp"
#include "span_helpers.hpp"

using namespace eqv;
using namespace testing_spans;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later failures only bump the count.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  int failures() const { return failures_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " of " + std::to_string(total_) + " checks failed; first: " + first_};
  }

 private:
  int total_ = 0;
  int failures_ = 0;
  std::string first_;
};

OrbitCategoryPtr category(const std::string& name) { return OrbitCategory::make(named_group(name)); }
SetUniversePtr universe(const OrbitCategoryPtr& oc, int bound) { return std::make_shared<SetUniverse>(oc, bound); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<fs::path> corpus_files(const std::string& group_dir, const std::string& suffix) {
  std::vector<fs::path> out;
  const fs::path dir = fs::path(EQV_CORPUS_DIR) / group_dir / "algebras";
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
      out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::string> kCorpusGroups = {"c2", "c4", "c2xc2", "s3"};

// ---- 1 ----

Outcome criterion_double_coset() {
  Check c;
  int triples = 0;
  for (const auto& name : oracle::small_groups()) {
    if (name == "e") continue;
    const auto g = oracle::group(name);
    std::vector<Subgroup> subs;
    for (auto& el : oracle::all_subgroups(*g)) subs.push_back(Subgroup{el});
    for (const Subgroup& h : subs)
      for (const Subgroup& j : subs)
        for (const Subgroup& k : subs) {
          if (!h.includes(j) || !h.includes(k)) continue;
          ++triples;
          c.expect(check_double_coset(g, h, j, k).equal, name + " |H|=" + std::to_string(h.order()) +
                                                             " |J|=" + std::to_string(j.order()) +
                                                             " |K|=" + std::to_string(k.order()));
        }
  }
  return c.outcome(std::to_string(triples) + " triples (J, K inside H) over 7 groups");
}

// ---- 2 ----

std::vector<GSet> all_feet(const OrbitCategory& oc, int max_points) {
  std::vector<GSet> out;
  for (const LevelSet& s : enumerate_sets(oc, oc.top(), max_points)) out.push_back(to_vset(oc, realize(oc, s)));
  return out;
}

Outcome criterion_burnside_laws() {
  Check c;
  int triples = 0, feet_checked = 0;
  for (const std::string name : {"C4", "S3"}) {
    const auto oc = category(name);
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
      const GSet w = random_foot(*oc, 4, rng), x = random_foot(*oc, 4, rng);
      const GSet y = random_foot(*oc, 4, rng), z = random_foot(*oc, 4, rng);
      const Span s1 = random_span(*oc, w, x, 6, rng), s2 = random_span(*oc, x, y, 6, rng);
      const Span s3 = random_span(*oc, y, z, 6, rng);
      const std::string where = name + " triple " + std::to_string(trial);
      c.expect(spans_isomorphic(compose_spans(compose_spans(s1, s2), s3), compose_spans(s1, compose_spans(s2, s3))),
               "associativity, " + where);
      c.expect(spans_isomorphic(compose_spans(identity_span(w), s1), s1), "left identity, " + where);
      c.expect(spans_isomorphic(compose_spans(s1, identity_span(x)), s1), "right identity, " + where);
      ++triples;
    }
    // Every X, X', Y with |X| + |X'| + |Y| <= 6; apex counts graded up to 3 points.
    const auto feet = all_feet(*oc, 6);
    for (const GSet& x : feet)
      for (const GSet& x2 : feet)
        for (const GSet& y : feet) {
          if (x.size() + x2.size() + y.size() > 6) continue;
          const auto r = check_semiadditivity(*oc, x, x2, y, 3);
          c.expect(r.additive && r.dual && r.atoms_match, name + ": " + r.message);
          ++feet_checked;
        }
  }
  return c.outcome(std::to_string(triples) + " random triples, " + std::to_string(feet_checked) +
                   " foot triples with at most 6 points in total");
}

// ---- 3 ----

Outcome criterion_hom_sizes() {
  Check c;
  int pairs = 0;
  for (const auto& name : oracle::small_groups()) {
    const auto oc = category(name);
    for (int k = 0; k < oc->num_levels(); ++k)
      for (int h = 0; h < oc->num_levels(); ++h) {
        const int expected = oracle::fixed_coset_count(oc->group(), oc->rep(k), oc->rep(h));
        c.expect(static_cast<int>(oc->morphisms_between(k, h).size()) == expected, name + " orbit category");
        c.expect(static_cast<int>(hom_set(oc->lattice(), oc->rep(k), oc->rep(h)).size()) == expected,
                 name + " equivariant maps");
        ++pairs;
      }
  }
  return c.outcome(std::to_string(pairs) + " class pairs over 8 groups");
}

// ---- 4 ----

Outcome criterion_windex_lattice() {
  Check c;
  std::ostringstream summary;
  for (const std::string name : {"C2", "C4"}) {
    const auto u = universe(category(name), 8);
    const auto& oc = u->category();
    auto systems = enumerate(u, EnumMode::Sparse);
    for (const auto& w : enumerate(u, EnumMode::ExactIndexing))
      if (std::find(systems.begin(), systems.end(), w) == systems.end()) systems.push_back(w);
    for (const auto& w : systems) {
      std::vector<char> rebuilt(u->total_size(), 0);
      for (int h = 0; h < oc.num_levels(); ++h)
        for (int i = 0; i < u->level_size(h); ++i)
          rebuilt[u->offset(h) + i] = is_member(w, oracle::map_to_orbit(oc, u->set(h, i)));
      c.expect(rebuilt == w.bits(), name + " round trip of " + describe(w));
    }
    const int n = static_cast<int>(systems.size());
    std::vector<std::vector<char>> le(n, std::vector<char>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) le[i][j] = leq_truncated(systems[i], systems[j]);
    int exact = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto jn = join(systems[i], systems[j]);
        const auto mt = meet(systems[i], systems[j]);
        // the bound computed inside the poset, if the poset has one
        int lub = -1, glb = -1;
        for (int k = 0; k < n; ++k) {
          if (le[i][k] && le[j][k] && (lub < 0 || le[k][lub])) lub = k;
          if (le[k][i] && le[k][j] && (glb < 0 || le[glb][k])) glb = k;
        }
        for (int k = 0; k < n; ++k) {
          if (lub >= 0 && le[i][k] && le[j][k] && !le[lub][k]) lub = -2;
          if (glb >= 0 && le[k][i] && le[k][j] && !le[k][glb]) glb = -2;
        }
        const std::string pair = name + " " + describe(systems[i]) + " / " + describe(systems[j]);
        c.expect(lub >= 0 && jn == systems[lub], "join is not the poset's least upper bound: " + pair);
        c.expect(glb >= 0 && mt == systems[glb], "meet is not the poset's greatest lower bound: " + pair);
        exact += lub >= 0 && glb >= 0;
      }
    summary << name << ": " << n << " systems, " << exact << " pairs; ";
  }
  return c.outcome(summary.str() + "round trip on every system");
}

// ---- 5 ----

std::vector<char> bits_of(const SetUniverse& u, const oracle::Family& f) {
  std::vector<char> bits(u.total_size(), 0);
  for (int h = 0; h < u.num_levels(); ++h)
    for (const auto& counts : f[h]) bits[u.offset(h) + u.index_of(LevelSet{h, counts})] = 1;
  return bits;
}

Outcome criterion_enumeration() {
  Check c;
  std::ostringstream summary;
  for (const auto& [name, bound] : {std::pair{"e", 5}, std::pair{"C2", 4}}) {
    const auto u = universe(category(name), bound);
    std::set<std::vector<char>> mine;
    for (const auto& w : enumerate(u, EnumMode::Truncated)) mine.insert(w.bits());
    std::set<std::vector<char>> brute;
    const int n = u->total_size();
    for (long mask = 0; mask < (1L << n); ++mask) {
      oracle::Family f(u->num_levels());
      for (int h = 0; h < u->num_levels(); ++h)
        for (int i = 0; i < u->level_size(h); ++i)
          if (mask >> (u->offset(h) + i) & 1) f[h].insert(u->set(h, i).counts);
      if (oracle::is_weak_indexing(u->category(), u->bound(), f)) brute.insert(bits_of(*u, f));
    }
    c.expect(mine == brute, std::string(name) + " closure enumeration differs from the subset filter");
    summary << name << "(" << bound << "): " << mine.size() << " weak systems; ";
  }
  for (const std::string name : {"C2", "C4"}) {
    const auto oc = category(name);
    const auto u = universe(oc, 2 * oc->group().order());
    std::set<std::vector<char>> mine;
    for (const auto& w : enumerate(u, EnumMode::ExactIndexing)) mine.insert(w.bits());
    std::set<std::vector<char>> brute;
    for (const auto& t : oracle::transfer_systems(*oc)) brute.insert(indexing_completion(u, {t.begin(), t.end()}).bits());
    c.expect(mine == brute, name + " indexing systems differ from the transfer relations");
    summary << name << ": " << mine.size() << " indexing systems; ";
  }
  return c.outcome(summary.str());
}

// ---- 6 ----

GSet random_action(const OrbitCategoryPtr& oc, int max_points, std::mt19937& rng) {
  for (;;) {
    GSet y = random_gset(*oc, max_points, rng);
    if (y.size() > 0) return y;
  }
}

Outcome criterion_arity_support_theorem() {
  Check c;
  std::mt19937 rng(6);
  const std::vector<std::string> groups = {"C2", "C3", "C4"};
  std::map<std::string, std::vector<WeakIndexingSystem>> systems;
  for (const auto& name : groups) systems[name] = enumerate(universe(category(name), name == "C4" ? 2 : 3), EnumMode::Truncated);
  int generated = 0, excluded = 0;
  std::map<std::string, int> kinds;
  while (generated < 100) {
    const std::string& name = groups[rng() % groups.size()];
    const auto& ws = systems[name];
    const OrbitCategoryPtr oc = ws.front().universe().category_ptr();
    const WeakIndexingSystem& w = ws[rng() % ws.size()];
    OperadPtr o;
    std::string kind;
    switch (rng() % 5) {
      case 0:
        o = ninfty(w), kind = "ninfty";
        break;
      case 1:
        o = triv(fixed_point_system(oc, random_action(oc, 3, rng)), w.bound()), kind = "triv";
        break;
      case 2:
        o = endomorphism_operad(oc, random_action(oc, 2, rng), 2), kind = "end";
        break;
      case 3:
        o = borelify(endomorphism_operad(oc, random_action(oc, 2, rng), w.bound()), w), kind = "borel";
        break;
      default: {
        auto t = tabulate(*endomorphism_operad(oc, random_action(oc, 2, rng), 2));
        auto& g = t->gamma_table();
        auto it = std::next(g.begin(), static_cast<long>(rng() % g.size()));
        const int n = t->sizes()[t->space().gamma_target(it->first.first, it->first.second)];
        if (n > 1 && !it->second.empty()) {
          int& entry = it->second[rng() % it->second.size()];
          entry = (entry + 1) % n;
        }
        o = t, kind = "mutated";
      }
    }
    if (!validate_operad(*o).ok()) {
      ++excluded;
      continue;
    }
    ++generated;
    ++kinds[kind];
    const WeakIndexingSystem a = arity_support(*o);
    c.expect(validate(a).empty(), name + " " + kind + ": support " + describe(a) + " is not a weak indexing system");
  }
  int exact = 0;
  for (const std::string name : {"e", "C2", "C3", "C4", "S3", "C2xC2"}) {
    const auto oc = category(name);
    for (const auto& w : enumerate(universe(oc, name == "C2xC2" || name == "S3" ? 2 : 3), EnumMode::Truncated)) {
      c.expect(arity_support(*ninfty(w)) == w, name + ": A(N) differs from " + describe(w));
      ++exact;
    }
  }
  const std::string shipped = slurp(fs::path(EQV_CORPUS_DIR) / "c2/operads/end_swap_mutated.json");
  c.expect(!validate_operad(*io::read_operad(shipped)).ok(), "shipped mutated operad accepted");
  std::ostringstream s;
  s << "100 operads (";
  for (const auto& [k, v] : kinds) s << k << " " << v << ", ";
  s << excluded << " rejected mutations excluded); A(N) = I on " << exact << " systems";
  return c.outcome(s.str());
}

// ---- 7 ----

Outcome criterion_subterminality() {
  Check c;
  const auto oc = category("C2");
  const auto ws = enumerate(universe(oc, 3), EnumMode::Truncated);
  std::vector<OperadPtr> ns;
  for (const auto& w : ws) ns.push_back(ninfty(w));
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = 0; j < ws.size(); ++j) {
      const std::size_t maps = operad_maps(*ns[i], *ns[j]).size();
      c.expect(maps == (leq_truncated(ws[i], ws[j]) ? 1u : 0u), describe(ws[i]) + " -> " + describe(ws[j]));
    }
  return c.outcome(std::to_string(ws.size() * ws.size()) + " pairs over " + std::to_string(ws.size()) +
                   " C2 systems (bound 3)");
}

// ---- 8 ----

CoeffSystem cyclic(const OrbitCategoryPtr& oc, int n) {
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) add[a][b] = (a + b) % n;
  return constant_monoid(oc, add, 0);
}

Outcome criterion_strict_algebras() {
  Check c;
  AlgebraOptions exhaustive;
  exhaustive.max_tuples = std::size_t(1) << 40;
  exhaustive.max_violations = 1;
  int examples = 0, mutations = 0;
  std::vector<StrictAlgebra> c2_algebras;
  for (const auto& g : kCorpusGroups)
    for (const auto& file : corpus_files(g, ".strict.json")) {
      const StrictAlgebra a = io::read_algebra(slurp(file));
      const std::string where = g + "/" + file.filename().string();
      c.expect(validate_strict_algebra(a, exhaustive).ok(), where + " rejected");
      ++examples;
      for (const auto& [s, tab] : a.mu)
        for (std::size_t e = 0; e < tab.size(); ++e)
          for (int v = 0; v < a.x.size(s.level); ++v) {
            if (v == tab[e]) continue;
            StrictAlgebra b = a;
            b.mu[s][e] = v;
            ++mutations;
            c.expect(!validate_strict_algebra(b, exhaustive).ok(), where + ": mutation at level " +
                                                                       std::to_string(s.level) + " entry " +
                                                                       std::to_string(e) + " accepted");
          }
      if (g == "c2") c2_algebras.push_back(a);
    }
  c.expect(mutations >= 50, "fewer than 50 mutations");

  std::mt19937 rng(42);
  const auto oc = c2_algebras.front().x.category_ptr();
  const int bound = c2_algebras.front().i.bound();
  std::vector<WeakIndexingSystem> systems = enumerate(universe(oc, bound), EnumMode::ExactIndexing);
  for (const auto& w : enumerate(universe(oc, bound), EnumMode::Sparse)) systems.push_back(w);
  int checked = 0, fast_used = 0, morphisms = 0;
  while (checked < 200) {
    const auto& w = systems[rng() % systems.size()];
    const auto& a0 = c2_algebras[rng() % c2_algebras.size()];
    const auto& b0 = c2_algebras[rng() % c2_algebras.size()];
    const auto maps = coeff_maps(a0.x, b0.x);
    if (maps.empty()) continue;
    const CoeffMap& f = maps[rng() % maps.size()];
    const StrictAlgebra a = restrict_algebra(a0, w), b = restrict_algebra(b0, w);
    const MorphismResult full = algebra_morphism(f, a, b);
    const MorphismResult fast = algebra_morphism(f, a, b, MorphismCheck::Fast);
    c.expect(full.morphism == fast.morphism, "fast and full criteria disagree over " + describe(w));
    fast_used += fast.fast;
    morphisms += full.morphism;
    ++checked;
  }
  return c.outcome(std::to_string(examples) + " shipped algebras, " + std::to_string(mutations) +
                   " mutations rejected; 200 maps agree (" + std::to_string(morphisms) + " morphisms, fast path on " +
                   std::to_string(fast_used) + ")");
}

// ---- 9 ----

Outcome criterion_chan_round_trip() {
  Check c;
  int chans = 0, stricts = 0;
  for (const std::string g : {"c2", "c4"}) {
    for (const auto& file : corpus_files(g, ".chan.json")) {
      const ChanData d = io::read_chan(slurp(file));
      if (!is_indexing_system(d.i)) continue;
      const std::string where = g + "/" + file.filename().string();
      c.expect(validate_chan(d).empty(), where + " invalid");
      const StrictAlgebra a = chan_to_strict(d);
      c.expect(validate_strict_algebra(a).ok(), where + ": strict form invalid");
      c.expect(strict_to_chan(a) == d, where + ": round trip differs");
      ++chans;
    }
    for (const auto& file : corpus_files(g, ".strict.json")) {
      const StrictAlgebra a = io::read_algebra(slurp(file));
      if (!is_indexing_system(a.i)) continue;
      const std::string where = g + "/" + file.filename().string();
      const ChanData d = strict_to_chan(a);
      c.expect(validate_chan(d).empty(), where + ": norms invalid");
      c.expect(same_algebra(chan_to_strict(d), a), where + ": round trip differs");
      ++stricts;
    }
  }
  c.expect(chans > 0 && stricts > 0, "no shipped examples");
  return c.outcome(std::to_string(chans) + " norm presentations and " + std::to_string(stricts) +
                   " strict algebras over C2 and C4");
}

// ---- 10 ----

Outcome criterion_monad() {
  Check c;
  const auto e = category("e");
  for (int bound = 1; bound <= 6; ++bound)
    c.expect(free_algebra(comm(e, bound), terminal_system(e)).size(0) == bound + 1,
             "Comm free algebra at bound " + std::to_string(bound));
  std::ostringstream summary;
  for (const std::string name : {"e", "C2"}) {
    const auto oc = category(name);
    for (const CoeffSystem& x : {terminal_system(oc), constant_system(oc, 2)}) {
      const MonadReport r = verify_monad_laws(comm(oc, 4), x);
      c.expect(r.ok(), name + ": " + (r.ok() ? "" : r.violations.front()));
      c.expect(r.coverage() >= 0.95, name + ": coverage " + std::to_string(r.coverage()));
      summary << name << " " << r.checked << " instances, coverage " << r.coverage() << "; ";
    }
  }
  int sets = 0;
  for (const std::string name : {"C2", "C3", "C4"}) {
    const auto oc = category(name);
    auto ws = enumerate(universe(oc, 3), EnumMode::Truncated);
    for (const auto& w : enumerate(universe(oc, 4), EnumMode::ExactIndexing)) ws.push_back(w);
    for (const auto& w : ws) {
      const OperadPtr n = ninfty(w);
      for (int h = 0; h < oc->num_levels(); ++h)
        for (const LevelSet& s : w.admissible(h)) {
          const SplittingReport r = splitting_check(*n, s);
          c.expect(r.ok() && r.operations == 1, name + " " + describe(w));
          ++sets;
        }
    }
  }
  summary << "splitting on " << sets << " admissible sets";
  return c.outcome(summary.str());
}

// ---- 11 ----

// Empty when the indexed product agrees with the limit over the orbit category.
std::string compare_with_limit(const OrbitCategoryPtr& oc, const std::vector<CoeffSystem>& xs, const RealizedSet& sr,
                               const IndexedProduct& p) {
  const SubgroupEmbedding& e = *p.embedding;
  const OrbitCategory& sub = *e.sub();
  if (!p.system.violation().empty()) return "not a coefficient system";
  std::vector<oracle::Limit> lims;
  std::vector<std::map<std::vector<int>, int>> reading(sub.num_levels());
  for (int k = 0; k < sub.num_levels(); ++k) {
    const int l = e.level(k);
    const int phi = k == sub.top() ? oc->identity(sr.level) : e.morphism(sub.find_morphism(k, sub.top(), 0));
    lims.push_back(oracle::coefficient_limit(*oc, xs, sr, l, phi));
    if (static_cast<int>(lims.back().families.size()) != p.system.size(k)) return "sizes differ";
    const RealizedSet& rk = p.sets[k];
    const auto& objs = lims.back().objects;
    for (const auto& fam : lims.back().families) {
      int idx = 0;
      for (std::size_t j = 0; j < rk.orbits.size(); ++j) {
        const auto& proj = p.projections[k][j];
        const int g = oc->find_morphism(rk.orbits[j].cls, l, rk.orbits[j].elt);
        const int sm = oc->find_morphism(rk.orbits[j].cls, sr.orbits[proj.target].cls, proj.elt);
        const auto it = std::find_if(objs.begin(), objs.end(), [&](const oracle::LimitObject& o) {
          return o.c == rk.orbits[j].cls && o.g == g && o.i == proj.target && o.s == sm;
        });
        if (it == objs.end()) return "orbit missing from the limit";
        idx = idx * xs[proj.target].size(rk.orbits[j].cls) + fam[it - objs.begin()];
      }
      reading[k].emplace(fam, idx);
    }
    std::set<int> image;
    for (const auto& [fam, idx] : reading[k]) image.insert(idx);
    if (static_cast<int>(image.size()) != p.system.size(k)) return "reading is not a bijection";
  }
  for (int m = 0; m < sub.num_morphisms(); ++m) {
    const int k2 = sub.morphism(m).src, k = sub.morphism(m).tgt;
    for (const auto& [fam, idx] : reading[k]) {
      const auto down = oracle::restrict_family(*oc, lims[k], lims[k2], e.morphism(m), fam);
      if (reading[k2].at(down) != p.system.restrict(m, idx)) return "restriction differs";
    }
  }
  return "";
}

Outcome criterion_indexed_products() {
  Check c;
  std::mt19937 rng(17);
  int instances = 0;
  for (const std::string name : {"C2", "C4"}) {
    auto oc = category(name);
    std::vector<CoeffSystem> pool = {constant_system(oc, 2), truncated_naturals(oc, 2)};
    while (pool.size() < 5) pool.push_back(fixed_point_system(oc, random_action(oc, 4, rng)));
    for (int h = 0; h < oc->num_levels(); ++h)
      for (const LevelSet& s : enumerate_sets(*oc, h, 6)) {
        const RealizedSet sr = realize(*oc, s);
        // each constant family plus two mixed ones
        std::vector<std::vector<CoeffSystem>> choices;
        for (const auto& x : pool) choices.emplace_back(sr.orbits.size(), x);
        for (int mix = 0; mix < 2; ++mix) {
          std::vector<CoeffSystem> xs;
          for (std::size_t i = 0; i < sr.orbits.size(); ++i) xs.push_back(pool[rng() % pool.size()]);
          choices.push_back(xs);
        }
        for (const auto& xs : choices) {
          const std::string where = name + " level " + std::to_string(h) + " |S|=" + std::to_string(cardinality(*oc, s));
          try {
            const std::string err = compare_with_limit(oc, xs, sr, indexed_product(oc, xs, sr));
            c.expect(err.empty(), where + ": " + err);
          } catch (const std::exception& e) {
            c.expect(false, where + ": " + e.what());
          }
          ++instances;
        }
      }
  }
  return c.outcome(std::to_string(instances) + " instances with |S| <= 6");
}

// ---- 12 ----

Outcome criterion_mackey() {
  Check c;
  std::mt19937 rng(12);
  std::vector<SemiMackey> functors;
  std::vector<std::string> names;
  for (const auto& g : kCorpusGroups)
    for (const auto& file : corpus_files(g, ".strict.json")) {
      const StrictAlgebra a = io::read_algebra(slurp(file));
      try {
        functors.push_back(strict_to_mackey(a));
        names.push_back(g + "/" + file.filename().string());
      } catch (const InvalidArgument&) {
      }
    }
  for (std::size_t i = 0; i < functors.size(); ++i) c.expect(functors[i].violation().empty(), names[i] + " invalid");
  int products = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t i = rng() % functors.size();
    const SemiMackey& m = functors[i];
    const OrbitCategory& oc = m.category();
    const std::string where = names[i] + " pair " + std::to_string(trial);
    const GSet x = random_foot(oc, 3, rng), y = random_foot(oc, 3, rng), z = random_foot(oc, 3, rng);
    const Span s1 = random_span(oc, x, y, 4, rng), s2 = random_span(oc, y, z, 4, rng);
    const MackeyElement e = random_element(m, x, rng);
    c.expect(evaluate(m, compose_spans(s1, s2), e) == evaluate(m, s2, evaluate(m, s1, e)), "composition, " + where);
    c.expect(evaluate(m, identity_span(x), e) == e, "identity, " + where);
    // M(X + Y) -> M(X) x M(Y) along the summand inclusions
    const GSet xy = disjoint_union(x, y);
    if (mackey_size(m, xy) > 4096) continue;
    GMap ix{x, xy, {}}, iy{y, xy, {}};
    for (int p = 0; p < x.size(); ++p) ix.f.push_back(p);
    for (int p = 0; p < y.size(); ++p) iy.f.push_back(x.size() + p);
    std::set<std::pair<MackeyElement, MackeyElement>> seen;
    const auto elems = mackey_elements(m, xy);
    for (const auto& el : elems) seen.insert({mackey_restrict(m, ix, el), mackey_restrict(m, iy, el)});
    c.expect(seen.size() == elems.size() &&
                 static_cast<std::int64_t>(seen.size()) == mackey_size(m, x) * mackey_size(m, y),
             "products, " + where);
    ++products;
  }
  return c.outcome(std::to_string(functors.size()) + " functors from shipped algebras; 200 span pairs, " +
                   std::to_string(products) + " product checks");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"double coset formula", criterion_double_coset},
      {"Burnside category laws", criterion_burnside_laws},
      {"orbit category Hom sizes", criterion_hom_sizes},
      {"weak indexing lattice", criterion_windex_lattice},
      {"enumeration cross-check", criterion_enumeration},
      {"arity support", criterion_arity_support_theorem},
      {"subterminality of 0-operads", criterion_subterminality},
      {"strict algebra suite", criterion_strict_algebras},
      {"norm presentation round trip", criterion_chan_round_trip},
      {"free algebra monad", criterion_monad},
      {"indexed product fixed points", criterion_indexed_products},
      {"semi-Mackey extraction", criterion_mackey},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
