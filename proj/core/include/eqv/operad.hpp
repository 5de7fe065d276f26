#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqv/coeff_system.hpp"
#include "eqv/gset.hpp"
#include "eqv/orbit_category.hpp"
#include "eqv/windex.hpp"

namespace eqv {

inline constexpr int kDefaultArityBound = 4;

/// Colors C on the orbits of a V-set S (in orbit order) and an output color D.
struct Profile {
  int level = 0;
  LevelSet set;
  std::vector<int> colors;
  int out = 0;
  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;
};

/// A profile over an arbitrary realization of its set.
struct Framed {
  RealizedSet set;
  std::vector<int> colors;
  int out = 0;
};

/// Canonical profile of a framed one and the isomorphism onto its canonical set.
struct Located {
  int profile = -1;  // -1 when beyond the bound
  SetMap to_canonical;
};

/// Every profile with at most `bound` points over a color system, with the
/// canonical realizations, their automorphisms and the structural operations
/// on profiles (restriction, composition, automorphism action).
class ProfileSpace {
 public:
  ProfileSpace(OrbitCategoryPtr oc, CoeffSystem colors, int bound);

  const OrbitCategory& category() const { return *oc_; }
  const OrbitCategoryPtr& category_ptr() const { return oc_; }
  const CoeffSystem& colors() const { return colors_; }
  int bound() const { return bound_; }

  int num_profiles() const { return static_cast<int>(profiles_.size()); }
  const Profile& profile(int id) const { return profiles_[id]; }
  /// -1 if absent.
  int find(const Profile& p) const;
  const std::vector<int>& profiles_at(int level) const { return at_level_[level]; }
  const std::vector<int>& profiles_with_output(int level, int color) const { return by_output_[level][color]; }
  int point_profile(int level, int color) const;

  const RealizedSet& canonical_set(int id) const { return sets_[set_of_[id]].set; }
  const std::vector<SetMap>& automorphisms(int id) const { return sets_[set_of_[id]].autos; }
  int aut_index(int id, const SetMap& s) const;
  int identity_aut(int id) const { return aut_index(id, identity_map(canonical_set(id))); }
  /// sigma^* P for an automorphism sigma of the canonical set.
  int act(int id, int aut) const { return act_[id][aut]; }

  Framed framed(int id) const;
  Located locate(const Framed& f) const;
  /// Restriction of P along a morphism into its level, with the projection onto P's canonical set.
  Framed restricted(int morphism, int id, SetMap* projection = nullptr) const;
  int res_target(int morphism, int id) const;
  /// Indexed coproduct of the Q_i over P's canonical set.
  Framed composite(int id, const std::vector<int>& qs, Coproduct* cp = nullptr) const;
  /// -1 when the composite exceeds the bound.
  int gamma_target(int id, const std::vector<int>& qs) const;
  /// Points of the composite, without building it.
  int composite_cardinality(int id, const std::vector<int>& qs) const;

  /// Automorphism canon1 -> canon2 induced by an isomorphism alpha: F1 -> F2.
  SetMap transport(const Located& l1, const Located& l2, const RealizedSet& f1, const RealizedSet& f2,
                   const SetMap& alpha) const;

  std::string describe(int id) const;

 private:
  struct SetData {
    RealizedSet set;
    std::vector<SetMap> autos;
    std::map<SetMap, int> index;
  };
  OrbitCategoryPtr oc_;
  CoeffSystem colors_;
  int bound_;
  std::vector<SetData> sets_;
  std::map<LevelSet, int> set_index_;
  std::vector<Profile> profiles_;
  std::map<Profile, int> profile_index_;
  std::vector<int> set_of_;
  std::vector<std::vector<int>> at_level_;
  std::vector<std::vector<std::vector<int>>> by_output_;
  std::vector<std::vector<int>> act_;
};
using ProfileSpacePtr = std::shared_ptr<const ProfileSpace>;

/// Discrete genuine G-operad truncated at the space's arity bound.
///
/// O(P) = {0, ..., size(P)-1}. rho(P, sigma, .): O(P) -> O(sigma^* P) for every
/// automorphism of the canonical set; res(m, P, .): O(P) -> O(Res_m P);
/// gamma composes over the canonical realizations.
class DiscreteOperad {
 public:
  explicit DiscreteOperad(ProfileSpacePtr space) : space_(std::move(space)) {}
  virtual ~DiscreteOperad() = default;

  const ProfileSpace& space() const { return *space_; }
  const ProfileSpacePtr& space_ptr() const { return space_; }
  const OrbitCategory& category() const { return space_->category(); }
  int bound() const { return space_->bound(); }

  virtual int size(int profile) const = 0;
  virtual int identity(int level, int color) const = 0;
  virtual int rho(int profile, int aut, int x) const = 0;
  virtual int res(int morphism, int profile, int x) const = 0;
  virtual int gamma(int profile, int x, const std::vector<int>& qs, const std::vector<int>& ys) const = 0;

 private:
  ProfileSpacePtr space_;
};
using OperadPtr = std::shared_ptr<const DiscreteOperad>;

/// Explicit tables; gamma is keyed by (P, Q_1..Q_n) and indexed by x, y_1..y_n
/// in mixed radix with x most significant.
class TabulatedOperad : public DiscreteOperad {
 public:
  explicit TabulatedOperad(ProfileSpacePtr space);

  int size(int profile) const override { return sizes_[profile]; }
  int identity(int level, int color) const override { return identities_[level][color]; }
  int rho(int profile, int aut, int x) const override { return rho_[profile][aut][x]; }
  int res(int morphism, int profile, int x) const override { return res_[morphism][profile][x]; }
  int gamma(int profile, int x, const std::vector<int>& qs, const std::vector<int>& ys) const override;

  std::vector<int>& sizes() { return sizes_; }
  std::vector<std::vector<int>>& identities() { return identities_; }
  std::vector<std::vector<std::vector<int>>>& rho_table() { return rho_; }
  std::vector<std::vector<std::vector<int>>>& res_table() { return res_; }
  std::map<std::pair<int, std::vector<int>>, std::vector<int>>& gamma_table() { return gamma_; }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<std::vector<int>>& identities() const { return identities_; }
  const std::vector<std::vector<std::vector<int>>>& rho_table() const { return rho_; }
  const std::vector<std::vector<std::vector<int>>>& res_table() const { return res_; }
  const std::map<std::pair<int, std::vector<int>>, std::vector<int>>& gamma_table() const { return gamma_; }
  /// Position of (x, ys) in a gamma entry.
  std::size_t gamma_offset(int profile, int x, const std::vector<int>& qs, const std::vector<int>& ys) const;

 private:
  std::vector<int> sizes_;
  std::vector<std::vector<int>> identities_;
  std::vector<std::vector<std::vector<int>>> rho_;  // [profile][aut][x]
  std::vector<std::vector<std::vector<int>>> res_;  // [morphism][profile][x], empty rows off-level
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> gamma_;
};

/// Materializes every in-bound structure map (throws CapExceeded past `cap` entries).
std::shared_ptr<TabulatedOperad> tabulate(const DiscreteOperad& o, std::size_t cap = 5000000);

/// Colors of a weak indexing system: one color on each nonempty level.
CoeffSystem color_system(const WeakIndexingSystem& w);

/// O(S) = * if S is admissible, else empty; bound defaults to w's.
OperadPtr ninfty(const WeakIndexingSystem& w, int bound = -1);
/// The terminal operad: ninfty of the complete system.
OperadPtr comm(OrbitCategoryPtr oc, int bound = kDefaultArityBound);
/// Only identities: O(*_V; c; c) = {1}.
OperadPtr triv(const CoeffSystem& colors, int bound = kDefaultArityBound);
/// One color; O(S) = V-maps Map(S, Y) -> Y with Y restricted to V.
OperadPtr endomorphism_operad(OrbitCategoryPtr oc, const GSet& y, int bound = kDefaultArityBound);
/// Structure sets over inadmissible arities emptied; colors cut to w's colored levels.
OperadPtr borelify(const OperadPtr& o, const WeakIndexingSystem& w);
/// Restriction to a subgroup H: O_H(S) = O(S as an R-set) for each K-set S.
OperadPtr restrict_operad(const OperadPtr& o, std::shared_ptr<const SubgroupEmbedding> e);

struct OperadReport {
  std::vector<std::string> violations;
  std::size_t checked = 0;       // element-level instances compared
  std::size_t data = 0;          // composable data visited
  std::size_t out_of_bound = 0;  // composable data beyond the arity bound
  std::size_t sampled = 0;       // data whose element tuples were sampled
  bool ok() const { return violations.empty(); }
  double coverage() const {
    return data + out_of_bound == 0 ? 1.0 : static_cast<double>(data) / static_cast<double>(data + out_of_bound);
  }
};

struct ValidateOptions {
  std::size_t max_tuples = 64;      // element tuples per datum before sampling
  std::size_t max_data = 200000;    // composable data per check
  std::size_t max_violations = 20;
  unsigned seed = 0;
};

OperadReport validate_operad(const DiscreteOperad& o, const ValidateOptions& opt = {});

/// Arities with some inhabited profile, at the operad's bound.
WeakIndexingSystem arity_support(const DiscreteOperad& o);
/// ninfty of the arity support.
OperadPtr h0(const DiscreteOperad& o);

/// Color map plus one function O(P) -> P'(phi P) per profile of the source.
struct OperadMap {
  CoeffMap colors;
  std::vector<std::vector<int>> elements;
};
/// Image profile id in p's space (-1 if absent).
int map_profile(const OperadMap& f, const DiscreteOperad& o, const DiscreteOperad& p, int profile);
std::string operad_map_violation(const OperadMap& f, const DiscreteOperad& o, const DiscreteOperad& p,
                                 const ValidateOptions& opt = {});
bool operad_map_check(const OperadMap& f, const DiscreteOperad& o, const DiscreteOperad& p);
/// All operad maps o -> p within the bound, by exhaustive search (throws CapExceeded).
std::vector<OperadMap> operad_maps(const DiscreteOperad& o, const DiscreteOperad& p, std::size_t cap = 100000);
OperadMap identity_operad_map(const DiscreteOperad& o);

struct NinftyMaps {
  bool inhabited = false;
  std::optional<OperadMap> map;  // the unique map when inhabited
};
/// Algebras of o in ninfty(w): inhabited iff A(o) <= w.
NinftyMaps alg_to_ninfty(const DiscreteOperad& o, const WeakIndexingSystem& w);

/// True when the two operads have the same profiles, sizes and structure maps.
bool same_operad(const DiscreteOperad& a, const DiscreteOperad& b);

}  // namespace eqv
