#pragma once

#include <memory>
#include <string>
#include <vector>

#include "eqv/gset.hpp"
#include "eqv/orbit_category.hpp"

namespace eqv {

/// Every iso class of V-set with at most `bound` points, per level, with
/// the arithmetic needed for closure computations tabulated.
class SetUniverse {
 public:
  SetUniverse(OrbitCategoryPtr oc, int bound);

  const OrbitCategory& category() const { return *oc_; }
  const OrbitCategoryPtr& category_ptr() const { return oc_; }
  int bound() const { return bound_; }
  int num_levels() const { return oc_->num_levels(); }
  int level_size(int h) const { return static_cast<int>(sets_[h].size()); }
  int total_size() const { return offset_.back(); }
  int offset(int h) const { return offset_[h]; }
  const LevelSet& set(int h, int i) const { return sets_[h][i]; }
  const std::vector<LevelSet>& sets(int h) const { return sets_[h]; }
  /// Index of s at its level; -1 if larger than the bound.
  int index_of(const LevelSet& s) const;
  int empty_index(int h) const { return empty_[h]; }
  int point_index(int h) const { return point_[h]; }
  /// -1 when the bound is below 2.
  int fold_index(int h) const { return fold_[h]; }
  /// Index of a + b, or -1 past the bound.
  int sum(int h, int a, int b) const { return sum_[h][a * level_size(h) + b]; }
  /// Index at level h of the set placed over one orbit of type t, or -1.
  int induce(int h, int t, int i) const { return induce_[h][t][i]; }
  int restrict(int morphism, int i) const { return restrict_[morphism][i]; }

 private:
  OrbitCategoryPtr oc_;
  int bound_;
  std::vector<std::vector<LevelSet>> sets_;
  std::vector<int> offset_;
  std::vector<int> empty_, point_, fold_;
  std::vector<std::vector<int>> sum_;
  std::vector<std::vector<std::vector<int>>> induce_;
  std::vector<std::vector<int>> restrict_;
};

using SetUniversePtr = std::shared_ptr<const SetUniverse>;

enum class Repr { Sparse, Truncated };

/// A weak indexing system, stored as its admissible sets up to a bound.
///
/// With Repr::Sparse the system is presented by its sparse generators
/// (admissible sparse sets together with 2 * pt where admissible), which is
/// lossless for almost essentially unital systems; the admissible sets up to
/// the bound are kept alongside for membership queries.
class WeakIndexingSystem {
 public:
  WeakIndexingSystem() = default;
  WeakIndexingSystem(SetUniversePtr universe, std::vector<char> admissible, Repr repr = Repr::Truncated,
                     bool saturated = false);

  const SetUniverse& universe() const { return *universe_; }
  const SetUniversePtr& universe_ptr() const { return universe_; }
  const OrbitCategory& category() const { return universe_->category(); }
  int bound() const { return universe_->bound(); }
  Repr repr() const { return repr_; }
  /// True when some coproduct demanded by closure fell beyond the bound.
  bool saturated() const { return saturated_; }
  const std::vector<char>& bits() const { return bits_; }

  /// Throws CapExceeded when the set is larger than the bound.
  bool contains(const LevelSet& s) const;
  bool contains_index(int h, int i) const { return bits_[universe_->offset(h) + i] != 0; }
  std::vector<LevelSet> admissible(int h) const;
  bool level_empty(int h) const;
  /// Admissible sparse sets plus 2 * pt where admissible, per level.
  std::vector<std::vector<LevelSet>> sparse_generators() const;
  WeakIndexingSystem with_repr(Repr r) const;

  friend bool operator==(const WeakIndexingSystem& a, const WeakIndexingSystem& b) {
    return a.bound() == b.bound() && a.bits_ == b.bits_;
  }

 private:
  SetUniversePtr universe_;
  std::vector<char> bits_;
  Repr repr_ = Repr::Truncated;
  bool saturated_ = false;
};

struct WindexViolation {
  std::string kind;  // "unit", "restriction", "coproduct"
  int level = 0;
  LevelSet set;
  std::vector<LevelSet> parts;  // witnesses T_U for coproduct violations
  LevelSet result;
  std::string message;
};

std::vector<WindexViolation> validate(const WeakIndexingSystem& w);
/// Validation of an arbitrary family of admissible sets.
std::vector<WindexViolation> validate_family(const SetUniverse& u, const std::vector<char>& bits);

/// Least weak indexing system (within the universe's bound) containing `bits`.
std::vector<char> closure(const SetUniverse& u, std::vector<char> bits, bool* saturated = nullptr);

WeakIndexingSystem from_generators(SetUniversePtr u, const std::vector<LevelSet>& gens,
                                   Repr repr = Repr::Truncated);
WeakIndexingSystem empty_system(SetUniversePtr u);
/// Only the one-point sets: the minimal one-color system.
WeakIndexingSystem minimal_system(SetUniversePtr u);
/// Every set up to the bound.
WeakIndexingSystem complete_system(SetUniversePtr u);

// ---- category side ----
/// Membership of a map t -> s of realized sets at the same level: every
/// fiber over an orbit of s must be admissible.
bool is_member(const WeakIndexingSystem& w, const RealizedSet& t, const SetMap& f, const RealizedSet& s);
/// Membership of an equivariant map of concrete G-sets.
bool is_member(const WeakIndexingSystem& w, const GMap& f);
/// Iso class at the stabilizer's level of the fiber over each orbit
/// representative of the codomain.
std::vector<LevelSet> fiber_classes(const OrbitCategory& oc, const GMap& f);

// ---- families and predicates ----
struct Families {
  std::vector<int> colors;  // class ids
  std::vector<int> units;
  std::vector<int> folds;
};
Families families(const WeakIndexingSystem& w);
bool has_one_color(const WeakIndexingSystem& w);
bool is_unital(const WeakIndexingSystem& w);
bool is_aeu(const WeakIndexingSystem& w);
bool is_indexing_system(const WeakIndexingSystem& w);

// ---- lattice ----
/// Containment; decided from sparse generators when a is almost essentially unital.
bool leq(const WeakIndexingSystem& a, const WeakIndexingSystem& b);
bool leq_truncated(const WeakIndexingSystem& a, const WeakIndexingSystem& b);
/// Containment of an indexing system a in b, decided from empty sets, folds
/// and transitive admissibles of a.
bool leq_indexing(const WeakIndexingSystem& a, const WeakIndexingSystem& b);
WeakIndexingSystem join(const WeakIndexingSystem& a, const WeakIndexingSystem& b);
WeakIndexingSystem meet(const WeakIndexingSystem& a, const WeakIndexingSystem& b);

// ---- enumeration ----
enum class EnumMode { Truncated, Sparse, ExactIndexing };
/// All weak indexing systems up to the bound (Truncated), the almost
/// essentially unital ones (Sparse), or all indexing systems (ExactIndexing).
std::vector<WeakIndexingSystem> enumerate(SetUniversePtr u, EnumMode mode, std::size_t cap = 200000);
/// The indexing system whose transitive admissibles are the given
/// (level, orbit type) pairs.
WeakIndexingSystem indexing_completion(SetUniversePtr u, const std::vector<std::pair<int, int>>& transfers);

struct HasseEdge {
  int lower;
  int upper;
  friend bool operator==(const HasseEdge&, const HasseEdge&) = default;
};
std::vector<HasseEdge> hasse(const std::vector<WeakIndexingSystem>& systems);
std::string hasse_dot(const std::vector<WeakIndexingSystem>& systems, const std::vector<HasseEdge>& edges);
/// Short human-readable description of a system's admissible sets.
std::string describe(const WeakIndexingSystem& w);

/// Restriction to a subgroup: a K-set is admissible iff its conjugate R-set is.
WeakIndexingSystem restrict_system(const WeakIndexingSystem& w, const SubgroupEmbedding& e);

}  // namespace eqv
