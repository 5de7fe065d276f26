#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqv/orbit_category.hpp"

namespace eqv {

/// Commutative monoid structure on every level of a coefficient system.
struct MonoidData {
  std::vector<std::vector<std::vector<int>>> add;  // [level][a][b]
  std::vector<int> zero;                            // [level]
};

/// Contravariant functor from the orbit category to finite sets.
///
/// Level h holds X^h = {0, ..., size(h)-1}; a morphism m: k -> h acts as
/// restrict(m, .): X^h -> X^k. Optionally every level is a commutative monoid.
class CoeffSystem {
 public:
  CoeffSystem() = default;
  /// `restriction[m]` tabulates X_m for every morphism id m of the category.
  CoeffSystem(OrbitCategoryPtr oc, std::vector<int> sizes,
              std::vector<std::vector<int>> restriction,
              std::optional<MonoidData> monoid = std::nullopt);

  const OrbitCategory& category() const { return *oc_; }
  const OrbitCategoryPtr& category_ptr() const { return oc_; }
  int size(int level) const { return sizes_[level]; }
  const std::vector<int>& sizes() const { return sizes_; }
  int restrict(int morphism, int x) const { return restriction_[morphism][x]; }
  const std::vector<std::vector<int>>& restriction() const { return restriction_; }

  bool has_monoid() const { return monoid_.has_value(); }
  const MonoidData& monoid() const { return *monoid_; }
  int add(int level, int a, int b) const { return monoid_->add[level][a][b]; }
  int zero(int level) const { return monoid_->zero[level]; }

  /// Empty when the functor (and monoid) axioms hold.
  std::string violation() const;

  friend bool operator==(const CoeffSystem& a, const CoeffSystem& b) {
    return a.sizes_ == b.sizes_ && a.restriction_ == b.restriction_ &&
           a.monoid_.has_value() == b.monoid_.has_value() &&
           (!a.monoid_ || (a.monoid_->add == b.monoid_->add && a.monoid_->zero == b.monoid_->zero));
  }

 private:
  OrbitCategoryPtr oc_;
  std::vector<int> sizes_;
  std::vector<std::vector<int>> restriction_;
  std::optional<MonoidData> monoid_;
};

/// Fixed-point system of a G-set: X^h = Y^{R_h}.
CoeffSystem fixed_point_system(OrbitCategoryPtr oc, const GSet& y);
/// Constant system on an n-element set (all restrictions the identity).
CoeffSystem constant_system(OrbitCategoryPtr oc, int n);
CoeffSystem terminal_system(OrbitCategoryPtr oc);
/// Constant monoid {0, ..., cap} with saturating addition.
CoeffSystem truncated_naturals(OrbitCategoryPtr oc, int cap);
/// Constant system on a given commutative monoid.
CoeffSystem constant_monoid(OrbitCategoryPtr oc, std::vector<std::vector<int>> add, int zero);
/// Forget the monoid structure.
CoeffSystem underlying_sets(const CoeffSystem& x);

/// Levelwise function between two systems on the same category.
using CoeffMap = std::vector<std::vector<int>>;
bool is_coeff_map(const CoeffSystem& x, const CoeffSystem& y, const CoeffMap& f);
/// All maps of coefficient systems x -> y (throws CapExceeded past cap).
std::vector<CoeffMap> coeff_maps(const CoeffSystem& x, const CoeffSystem& y,
                                 std::size_t cap = 100000);

// ---- tuples over realized sets ----

/// Element of prod over orbits i of X^{cls_i}.
using Tuple = std::vector<int>;

/// Number of tuples over the orbits of a (may be large; saturates at INT64_MAX).
std::int64_t tuple_count(const CoeffSystem& x, const RealizedSet& a);
Tuple decode_tuple(const CoeffSystem& x, const RealizedSet& a, std::int64_t index);
std::int64_t encode_tuple(const CoeffSystem& x, const RealizedSet& a, const Tuple& t);
/// f* t for f: a -> b and t a tuple over b.
Tuple pullback_tuple(const CoeffSystem& x, const SetMap& f, const RealizedSet& a,
                     const RealizedSet& b, const Tuple& t);
/// Push a tuple over a forward along an iso f: a -> b.
Tuple push_tuple(const CoeffSystem& x, const SetMap& iso, const RealizedSet& a,
                 const RealizedSet& b, const Tuple& t);
/// Morphism of the orbit category underlying orbit i of a mapped to its image.
int orbit_morphism(const OrbitCategory& oc, const SetMap& f, const RealizedSet& a,
                   const RealizedSet& b, int i);

}  // namespace eqv
