#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eqv {

/// One-line permutation on {0, ..., degree-1}: p[x] is the image of x.
using Perm = std::vector<int>;

inline constexpr std::size_t kDefaultGroupCap = 10000;

/// Finite group stored as an explicit multiplication table.
///
/// Elements are indices 0..order-1 and 0 is the identity. mul(a, b) is the
/// product ab; for groups built from permutations, ab acts as "b first, then a".
class Group {
 public:
  Group() = default;

  /// Validates the table (identity, inverses, associativity, Latin square).
  static Group from_table(std::string name, std::vector<std::vector<int>> table,
                          std::vector<std::string> labels = {});

  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int a, int g) const { return mul(mul(a, g), inverse_[a]); }  // a g a^-1
  const std::string& name() const { return name_; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Permutation representation the group was generated from, if any.
  const std::vector<Perm>& permutations() const { return perms_; }

  /// Empty string when every group axiom holds on all triples.
  std::string axiom_violation() const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.table_ == b.table_;
  }

 private:
  friend Group group_from_generators(int, const std::vector<Perm>&, std::size_t,
                                     std::string);
  friend Group group_from_permutations(std::vector<Perm>, std::string);
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> labels_;
  std::vector<Perm> perms_;
};

/// Closure of the generators under composition, identity first.
Group group_from_generators(int degree, const std::vector<Perm>& generators,
                            std::size_t cap = kDefaultGroupCap,
                            std::string name = "");

/// Group on a list of permutations that is already closed under composition.
Group group_from_permutations(std::vector<Perm> elements, std::string name = "");

Group trivial_group();
Group cyclic_group(int n);
Group dihedral_group(int n);  // order 2n
Group symmetric_group(int n);
Group klein_four_group();
Group direct_product(const Group& a, const Group& b);
/// Named small group: "e", "C<n>", "D<n>" (order 2n), "S<n>", "C2xC2", "V4".
Group named_group(const std::string& name);

/// Sorted list of element indices of an ambient group.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;
  bool includes(const Subgroup& other) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  friend auto operator<=>(const Subgroup&, const Subgroup&) = default;
};

Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup();
Subgroup generated_subgroup(const Group& g, const std::vector<int>& gens);
bool is_subgroup(const Group& g, const std::vector<int>& elements);
/// a H a^-1
Subgroup conjugate_subgroup(const Group& g, const Subgroup& h, int a);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const Group& g, const Subgroup& h, const Subgroup& within);
/// Least element of the left coset aH.
int left_coset_rep(const Group& g, int a, const Subgroup& h);
/// Least representatives of the left cosets of h inside `within`.
std::vector<int> left_coset_reps(const Group& g, const Subgroup& within,
                                 const Subgroup& h);

/// Subgroups of an ambient subgroup V of G, up to conjugation by V.
///
/// Classes are ordered by (order, lexicographic representative); the
/// representative is the lexicographically least member of its class.
class SubgroupLattice {
 public:
  SubgroupLattice(std::shared_ptr<const Group> g, Subgroup ambient);
  explicit SubgroupLattice(std::shared_ptr<const Group> g);

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const Subgroup& ambient() const { return ambient_; }

  int num_subgroups() const { return static_cast<int>(subgroups_.size()); }
  const Subgroup& subgroup(int i) const { return subgroups_[i]; }
  const std::vector<Subgroup>& subgroups() const { return subgroups_; }
  int index_of(const Subgroup& h) const;  // -1 if absent

  int num_classes() const { return static_cast<int>(class_reps_.size()); }
  const Subgroup& class_rep(int c) const { return subgroups_[class_reps_[c]]; }
  const std::vector<int>& class_members(int c) const { return members_[c]; }
  int class_of(int subgroup_index) const { return class_of_[subgroup_index]; }
  int class_of(const Subgroup& h) const;  // throws if h is not a subgroup of V
  /// Element a of V with a h a^-1 equal to the representative of h's class.
  int to_rep(const Subgroup& h) const;

  /// Some a in V with a K a^-1 contained in H (class representatives).
  std::optional<int> subconjugacy_witness(int k_class, int h_class) const {
    return subconj_[k_class][h_class];
  }
  bool subconjugate(int k_class, int h_class) const {
    return subconj_[k_class][h_class].has_value();
  }
  /// Class id of the whole ambient subgroup.
  int top_class() const { return num_classes() - 1; }

 private:
  std::shared_ptr<const Group> group_;
  Subgroup ambient_;
  std::vector<Subgroup> subgroups_;
  std::vector<int> class_of_;
  std::vector<int> class_reps_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<std::optional<int>>> subconj_;
};

SubgroupLattice subgroup_lattice(const Group& g);

/// Least-element representatives of the double cosets J\H/K.
std::vector<int> double_cosets(const Group& g, const Subgroup& j,
                               const Subgroup& h, const Subgroup& k);
/// The block JaK.
std::vector<int> double_coset(const Group& g, const Subgroup& j, int a,
                              const Subgroup& k);

/// N_V(H)/H as an abstract group (V the lattice's ambient subgroup).
Group weyl_group(const SubgroupLattice& l, const Subgroup& h);

/// Some a in the ambient subgroup with a K a^-1 contained in H.
std::optional<int> is_subconjugate(const SubgroupLattice& l, const Subgroup& k,
                                   const Subgroup& h);

/// Quotient group N/H for H normal in N (elements: least coset reps).
Group quotient_group(const Group& g, const Subgroup& n, const Subgroup& h);

}  // namespace eqv
