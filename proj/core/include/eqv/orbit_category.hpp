#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "eqv/group.hpp"
#include "eqv/gset.hpp"

namespace eqv {

/// Skeletal orbit category of a finite group G.
///
/// Objects ("levels") are the conjugacy classes of subgroups, each represented
/// by the orbit G/R where R is the class representative. A morphism
/// G/R_k -> G/R_h is a coset bR_h with b^-1 R_k b inside R_h; it sends the
/// basepoint eR_k to bR_h. Coset elements are always stored as the least
/// element of the coset.
///
/// A finite V-set (V = R_h) is modelled as a G-set over G/R_h, written as a
/// list of orbits G/R_k whose basepoints lie over bR_h. Orbit types at level h
/// correspond one-to-one with V-conjugacy classes of subgroups of V and are
/// numbered like the classes of the local lattice of V.
class OrbitCategory {
 public:
  struct Morphism {
    int src;
    int tgt;
    int elt;
  };
  struct OrbitType {
    int cls;   // level of the orbit
    int elt;   // canonical basepoint image in G/R_level
    int size;  // |R_level| / |R_cls|
  };

  explicit OrbitCategory(std::shared_ptr<const Group> g);
  static std::shared_ptr<const OrbitCategory> make(const Group& g);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const SubgroupLattice& lattice() const { return lattice_; }
  /// Lattice of subgroups of R_h up to R_h-conjugacy.
  const SubgroupLattice& local_lattice(int h) const { return local_[h]; }

  int num_levels() const { return lattice_.num_classes(); }
  int top() const { return num_levels() - 1; }
  const Subgroup& rep(int c) const { return lattice_.class_rep(c); }
  int level_order(int c) const { return rep(c).order(); }
  int coset(int c, int g) const { return coset_[c][g]; }
  const std::vector<int>& coset_reps(int c) const { return coset_reps_[c]; }
  /// Elements of N_G(R_c).
  const std::vector<int>& normalizer(int c) const { return normalizer_[c]; }

  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const Morphism& morphism(int id) const { return morphisms_[id]; }
  const std::vector<int>& morphisms_between(int k, int h) const { return between_[k * num_levels() + h]; }
  /// Morphisms with the given target, over all sources.
  const std::vector<int>& morphisms_into(int h) const { return into_[h]; }
  /// Id of the morphism k -> h given by the coset of `elt`; -1 if not a morphism.
  int find_morphism(int k, int h, int elt) const;
  int identity(int k) const { return find_morphism(k, k, 0); }
  /// outer o inner, where inner: l -> k and outer: k -> h.
  int compose(int outer, int inner) const;

  int num_types(int h) const { return static_cast<int>(types_[h].size()); }
  const OrbitType& type(int h, int t) const { return types_[h][t]; }
  /// Type of the orbit (k, elt) at level h.
  int type_of(int h, int k, int elt) const { return type_lookup_[h][k * group_->order() + elt]; }
  /// Element w of N(R_k) with coset_h(w * elt) equal to the type's canonical element.
  int type_normalizer(int h, int k, int elt) const { return type_w_[h][k * group_->order() + elt]; }
  /// Elements d (mod R_k) of N(R_k) fixing the type's canonical basepoint image.
  const std::vector<int>& type_stabilizer(int h, int t) const { return type_stab_[h][t]; }
  /// Type index of the one-point V-set.
  int point_type(int h) const { return type_of(h, h, 0); }

  /// Counts (at the source level) of the pullback of orbit type t along m.
  const std::vector<int>& restrict_type(int m, int t) const { return restrict_table_[m][t]; }
  /// Type at level h of the orbit of type t2 (at the level of t) placed over
  /// an orbit of type t.
  int induce_type(int h, int t, int t2) const { return induce_table_[h][t][t2]; }

 private:
  std::vector<std::vector<std::vector<int>>> restrict_table_;
  std::vector<std::vector<std::vector<int>>> induce_table_;
  std::shared_ptr<const Group> group_;
  SubgroupLattice lattice_;
  std::vector<SubgroupLattice> local_;
  std::vector<std::vector<int>> coset_;
  std::vector<std::vector<int>> coset_reps_;
  std::vector<std::vector<int>> normalizer_;
  std::vector<Morphism> morphisms_;
  std::vector<int> morph_lookup_;
  std::vector<std::vector<int>> between_;
  std::vector<std::vector<int>> into_;
  std::vector<std::vector<OrbitType>> types_;
  std::vector<std::vector<int>> type_lookup_;
  std::vector<std::vector<int>> type_w_;
  std::vector<std::vector<std::vector<int>>> type_stab_;
};

using OrbitCategoryPtr = std::shared_ptr<const OrbitCategory>;

/// Iso class of a V-set at a level: orbit multiplicity per orbit type.
struct LevelSet {
  int level = 0;
  std::vector<int> counts;

  friend bool operator==(const LevelSet&, const LevelSet&) = default;
  friend auto operator<=>(const LevelSet&, const LevelSet&) = default;
};

/// Orbit G/R_cls whose basepoint lies over elt * R_level.
struct OrbitSpec {
  int cls;
  int elt;
  friend bool operator==(const OrbitSpec&, const OrbitSpec&) = default;
  friend auto operator<=>(const OrbitSpec&, const OrbitSpec&) = default;
};

/// Concrete V-set: a list of orbits over G/R_level.
struct RealizedSet {
  int level = 0;
  std::vector<OrbitSpec> orbits;
  friend bool operator==(const RealizedSet&, const RealizedSet&) = default;
};

/// Equivariant map of underlying G-sets: orbit i's basepoint goes to
/// elt * (basepoint of target orbit).
struct OrbitImage {
  int target;
  int elt;
  friend bool operator==(const OrbitImage&, const OrbitImage&) = default;
  friend auto operator<=>(const OrbitImage&, const OrbitImage&) = default;
};
using SetMap = std::vector<OrbitImage>;

struct Canonical {
  LevelSet iso;
  RealizedSet set;  // canonical realization
  SetMap to_canonical;
};

struct Restricted {
  RealizedSet set;  // at the morphism's source level
  SetMap projection;  // into the restricted set's orbits
};

struct Coproduct {
  RealizedSet set;
  SetMap projection;           // to the indexing set S
  std::vector<int> offsets;    // first orbit of each summand
};

// ---- level-set arithmetic ----
LevelSet empty_set(const OrbitCategory& oc, int h);
LevelSet point(const OrbitCategory& oc, int h, int copies = 1);
int cardinality(const OrbitCategory& oc, const LevelSet& s);
int num_orbits(const LevelSet& s);
LevelSet add(const LevelSet& a, const LevelSet& b);
/// True iff `part` is a sub-multiset of `whole`.
bool is_summand(const LevelSet& part, const LevelSet& whole);
bool is_transitive(const LevelSet& s);
/// All iso classes at level h with at most `bound` points, in increasing order.
std::vector<LevelSet> enumerate_sets(const OrbitCategory& oc, int h, int bound);

// ---- realized sets ----
RealizedSet realize(const OrbitCategory& oc, const LevelSet& s);
LevelSet iso_class(const OrbitCategory& oc, const RealizedSet& a);
int cardinality(const OrbitCategory& oc, const RealizedSet& a);
Canonical canonicalize(const OrbitCategory& oc, const RealizedSet& a);
/// Pullback of a along a morphism into its level.
Restricted restrict_along(const OrbitCategory& oc, const RealizedSet& a, int morphism);
LevelSet restrict_along(const OrbitCategory& oc, const LevelSet& s, int morphism);
/// Indexed coproduct of the T_i (T_i at the level of orbit i of s).
Coproduct indexed_coproduct(const OrbitCategory& oc, const RealizedSet& s,
                            const std::vector<RealizedSet>& parts);
LevelSet indexed_coproduct(const OrbitCategory& oc, const LevelSet& s,
                           const std::vector<LevelSet>& parts_in_orbit_order);
/// Fiber of f over each orbit of the codomain, as sets at that orbit's level,
/// together with the indices of the contributing domain orbits.
struct Fibers {
  std::vector<RealizedSet> sets;
  std::vector<std::vector<int>> members;
};
Fibers fibers(const OrbitCategory& oc, const RealizedSet& domain, const SetMap& f,
              const RealizedSet& codomain);

// ---- maps ----
/// g after f, where f: a -> b and g: b -> c.
SetMap compose(const OrbitCategory& oc, const SetMap& f, const SetMap& g, const RealizedSet& c);
SetMap inverse(const OrbitCategory& oc, const SetMap& iso, const RealizedSet& a,
               const RealizedSet& b);
SetMap identity_map(const RealizedSet& a);
/// Equivariance and (optionally) compatibility with the maps to G/R_level.
bool is_map(const OrbitCategory& oc, const SetMap& f, const RealizedSet& a,
            const RealizedSet& b, bool over_level);
bool is_iso(const OrbitCategory& oc, const SetMap& f, const RealizedSet& a, const RealizedSet& b);
/// All automorphisms over the level (throws CapExceeded past `cap`).
std::vector<SetMap> automorphisms(const OrbitCategory& oc, const RealizedSet& a,
                                  std::size_t cap = 50000);

// ---- conversion to concrete sets ----
/// The underlying V-set (V = R_level) of a realized set, points in orbit order.
GSet to_vset(const OrbitCategory& oc, const RealizedSet& a);
/// Realize a V-set (acting group must be R_level for some level).
RealizedSet from_vset(const OrbitCategory& oc, const GSet& x);
/// Level-set iso class of a V-set.
LevelSet level_iso_class(const OrbitCategory& oc, const GSet& x);
/// Conversion between level-set counts and local-lattice iso classes.
GSetIso to_gset_iso(const LevelSet& s);
LevelSet from_gset_iso(const OrbitCategory& oc, int h, const GSetIso& s);


// ---- subgroups ----

/// Orbit category of a subgroup H <= G and the translation of its levels,
/// morphisms, sets and maps into the orbit category of G (K-sets become
/// R-sets for the representative R of K's G-conjugacy class).
class SubgroupEmbedding {
 public:
  SubgroupEmbedding(OrbitCategoryPtr ambient, const Subgroup& h);

  const OrbitCategoryPtr& ambient() const { return ambient_; }
  const OrbitCategoryPtr& sub() const { return sub_; }
  /// G element of an element of H.
  int element(int x) const { return elements_[x]; }
  int level(int k) const { return level_[k]; }
  /// a in G with a K a^-1 = R_level(k).
  int conjugator(int k) const { return conj_[k]; }
  int morphism(int m) const { return morphism_[m]; }
  RealizedSet set(const RealizedSet& a) const;
  SetMap map(const SetMap& f, const RealizedSet& a, const RealizedSet& b) const;

 private:
  OrbitCategoryPtr ambient_;
  OrbitCategoryPtr sub_;
  std::vector<int> elements_;
  std::vector<int> level_;
  std::vector<int> conj_;
  std::vector<int> morphism_;
};

}  // namespace eqv
