#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "eqv/group.hpp"

namespace eqv {

/// Finite set with an action of a subgroup H of an ambient group G.
///
/// Points are 0..size-1. act(g, x) is defined for g in the acting subgroup.
class GSet {
 public:
  GSet() = default;
  /// `action[g]` must be filled for g in `acting` and may be empty otherwise.
  GSet(std::shared_ptr<const Group> group, Subgroup acting, int size,
       std::vector<std::vector<int>> action);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const Subgroup& acting() const { return acting_; }
  int size() const { return size_; }
  int act(int g, int x) const { return action_[g][x]; }
  const std::vector<std::vector<int>>& action() const { return action_; }

  /// Stabilizer of x inside the acting subgroup.
  Subgroup stabilizer(int x) const;
  /// Points fixed by every element of k (k inside the acting subgroup).
  std::vector<int> fixed_points(const Subgroup& k) const;

  friend bool operator==(const GSet& a, const GSet& b) {
    return *a.group_ == *b.group_ && a.acting_ == b.acting_ && a.size_ == b.size_ &&
           a.action_ == b.action_;
  }

 private:
  std::shared_ptr<const Group> group_;
  Subgroup acting_;
  int size_ = 0;
  std::vector<std::vector<int>> action_;
};

/// Equivariant map between two sets with the same acting subgroup.
struct GMap {
  GSet source;
  GSet target;
  std::vector<int> f;

  bool is_equivariant() const;
};

/// Iso class of an H-set: orbit multiplicity per conjugacy class of the
/// lattice of H (class ids are the lattice's).
struct GSetIso {
  std::vector<int> counts;

  int num_orbits() const;
  friend bool operator==(const GSetIso&, const GSetIso&) = default;
  friend auto operator<=>(const GSetIso&, const GSetIso&) = default;
};

struct Orbit {
  std::vector<int> points;  // sorted
  Subgroup stabilizer;      // of the least point
  int stabilizer_class = -1;
};

/// n copies of the one-point set with the given acting subgroup.
GSet point_set(std::shared_ptr<const Group> g, const Subgroup& acting, int copies = 1);
/// Left cosets V/K with V the acting subgroup; points are ordered by least rep.
GSet coset_set(std::shared_ptr<const Group> g, const Subgroup& acting, const Subgroup& k);
/// Acting subgroup permuting the points of one permutation representation.
GSet from_permutation_action(std::shared_ptr<const Group> g, const Subgroup& acting,
                             int size, const std::vector<Perm>& images);

std::vector<Orbit> orbit_decomposition(const GSet& x, const SubgroupLattice& l);
GSetIso iso_class(const GSet& x, const SubgroupLattice& l);
int cardinality(const GSetIso& s, const SubgroupLattice& l);
GSet realize(const GSetIso& iso, const SubgroupLattice& l);

GSet disjoint_union(const GSet& a, const GSet& b);
GSet cartesian_product(const GSet& a, const GSet& b);
/// Ind_H^V x for H the acting subgroup of x and V a supergroup.
GSet induce(const GSet& x, const Subgroup& to);
GSet restrict(const GSet& x, const Subgroup& to);
/// Same points with a H a^-1 acting through conjugation.
GSet conjugate(const GSet& x, int a);

struct Pullback {
  GSet apex;
  GMap left;   // apex -> f.source
  GMap right;  // apex -> g.source
  std::vector<std::pair<int, int>> pairs;
};
Pullback pullback(const GMap& f, const GMap& g);

/// All equivariant maps x -> y.
std::vector<std::vector<int>> equivariant_maps(const GSet& x, const GSet& y);
/// Calls `visit` for each equivariant map until it returns false.
void for_each_equivariant_map(const GSet& x, const GSet& y,
                              const std::function<bool(const std::vector<int>&)>& visit);
std::optional<std::vector<int>> find_isomorphism(const GSet& x, const GSet& y);
std::vector<std::vector<int>> automorphisms(const GSet& x);
/// Equivariant self-bijections as an abstract group.
Group aut_group(const GSet& x, std::size_t cap = kDefaultGroupCap);

/// All maps [V/K] -> [V/H] between coset sets of the lattice's ambient V.
std::vector<GMap> hom_set(const SubgroupLattice& l, const Subgroup& k, const Subgroup& h);

struct SparseDecomposition {
  bool has_point = false;            // epsilon
  std::vector<int> summand_classes;  // non-terminal orbit classes W_1..W_n
};
/// Sparse iff x = eps * pt + W_1 + ... + W_n with no maps W_i -> W_j (i != j).
/// The distinguished fixed point is exempt from the no-map condition.
std::optional<SparseDecomposition> is_sparse(const GSet& x, const SubgroupLattice& l);
std::optional<SparseDecomposition> is_sparse(const GSetIso& x, const SubgroupLattice& l);
/// Every sparse iso class over the lattice's ambient subgroup.
std::vector<GSetIso> sparse_sets(const SubgroupLattice& l);

struct DoubleCosetCheck {
  GSetIso lhs;  // Res_J Ind_K^H pt
  GSetIso rhs;  // sum over J g K of [J / (J cap gKg^-1)]
  bool equal = false;
};
DoubleCosetCheck check_double_coset(std::shared_ptr<const Group> g, const Subgroup& h,
                                    const Subgroup& j, const Subgroup& k);

}  // namespace eqv
