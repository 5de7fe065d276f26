#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqv/burnside.hpp"
#include "eqv/coeff_system.hpp"
#include "eqv/operad.hpp"
#include "eqv/orbit_category.hpp"
#include "eqv/windex.hpp"

namespace eqv {

// ---- indexed products ----

/// Coefficient system of the subgroup V = R_level of s: the K-level is the
/// product over the orbits of Res_K S of the factor attached to the orbit of S
/// below them. Levels are those of `embedding->sub()`.
struct IndexedProduct {
  std::shared_ptr<const SubgroupEmbedding> embedding;
  CoeffSystem system;
  /// Res_K S as a set at the ambient level of K, with its projection onto s.
  std::vector<RealizedSet> sets;
  std::vector<SetMap> projections;
};

/// One factor per orbit of s (factor i is read at levels below orbit i).
/// The top level is tuples over s itself, in encode_tuple order.
IndexedProduct indexed_product(const OrbitCategoryPtr& oc, const std::vector<CoeffSystem>& xs, const RealizedSet& s);
/// X read over the orbit category of a subgroup.
CoeffSystem restrict_coeff(const CoeffSystem& x, const SubgroupEmbedding& e);
/// Indexed diagonal Res_V X -> prod^S Res X, levelwise.
CoeffMap indexed_diagonal(const CoeffSystem& x, const IndexedProduct& p);

// ---- strict algebras ----

/// mu_S for every admissible S (keyed by iso class), tabulated over tuples on
/// the canonical realization realize(S) in encode_tuple order.
struct StrictAlgebra {
  CoeffSystem x;
  WeakIndexingSystem i;
  std::map<LevelSet, std::vector<int>> mu;
};

/// Product of mu_S over a framed realization of an admissible set.
int apply(const StrictAlgebra& a, const RealizedSet& s, const Tuple& t);
int apply(const StrictAlgebra& a, const LevelSet& s, const Tuple& t);

struct AlgebraReport {
  std::vector<std::string> violations;
  std::size_t checked = 0;
  std::size_t sampled = 0;  // composable data whose tuples were sampled
  bool ok() const { return violations.empty(); }
};

struct AlgebraOptions {
  std::size_t max_tuples = 256;
  std::size_t max_violations = 20;
  unsigned seed = 0;
};

/// Shape, invariance, restriction-stability, mu_* = id, the commutativity
/// square and the derived unitality.
AlgebraReport validate_strict_algebra(const StrictAlgebra& a, const AlgebraOptions& opt = {});
/// The same mu on the admissible sets of a smaller system.
StrictAlgebra restrict_algebra(const StrictAlgebra& a, const WeakIndexingSystem& smaller);
bool same_algebra(const StrictAlgebra& a, const StrictAlgebra& b);
/// Terminal system with its unique structure.
StrictAlgebra terminal_algebra(const WeakIndexingSystem& i);

/// f o mu^a = mu^b o prod f on every tuple, at S and at each restriction of S.
bool intertwines(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b, const LevelSet& s);
/// Admissible sets where f intertwines (a weak indexing system inside I).
WeakIndexingSystem intertwining_locus(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b);

enum class MorphismCheck { Full, Fast };
struct MorphismResult {
  bool morphism = false;
  bool fast = false;                // a reduced family was used
  std::vector<LevelSet> checked;    // sets examined
  std::optional<LevelSet> failure;  // first set where f does not intertwine
};
/// Fast: empty sets, 2 * pt and transitive sets for indexing systems; empty
/// sets and sparse generators for almost essentially unital systems; full
/// otherwise.
MorphismResult algebra_morphism(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b,
                                MorphismCheck mode = MorphismCheck::Full);
bool is_algebra_morphism(const CoeffMap& f, const StrictAlgebra& a, const StrictAlgebra& b,
                         MorphismCheck mode = MorphismCheck::Full);

// ---- incomplete Tambara-free monoids ----

/// Coefficient system of commutative monoids with norms along admissible
/// transitive sets: norms[(level, type)] tabulates X^cls -> X^level on the
/// canonical orbit of that type.
struct ChanData {
  CoeffSystem x;
  WeakIndexingSystem i;
  std::map<std::pair<int, int>, std::vector<int>> norms;
  friend bool operator==(const ChanData& a, const ChanData& b) {
    return a.x == b.x && a.i == b.i && a.norms == b.norms;
  }
};

/// Monoid axioms, additive and unital norms, and validity of chan_to_strict.
std::vector<std::string> validate_chan(const ChanData& c, const AlgebraOptions& opt = {});
/// mu_S = sum over the orbits of S of the norm of that orbit.
StrictAlgebra chan_to_strict(const ChanData& c);
/// Sum from mu_{2 pt}, zero from mu_empty, norms from transitive mu.
ChanData strict_to_chan(const StrictAlgebra& a);

/// Transfers from mu over single orbits; needs every transitive set, 2 * pt and
/// the empty set admissible.
SemiMackey strict_to_mackey(const StrictAlgebra& a);

// ---- the free algebra monad ----

/// One summand element of (T_O X)^V: arity profile, operation and a tuple over
/// the canonical set, least in its Aut_V(S) orbit.
struct FreeElement {
  int profile = -1;
  int op = 0;
  Tuple tuple;
  friend bool operator==(const FreeElement&, const FreeElement&) = default;
  friend auto operator<=>(const FreeElement&, const FreeElement&) = default;
};

/// T_O X with its elements and the summand decomposition.
class FreeAlgebra {
 public:
  FreeAlgebra(OperadPtr o, CoeffSystem x, std::size_t cap = 20000000);

  const CoeffSystem& system() const { return system_; }
  const CoeffSystem& generators() const { return x_; }
  const DiscreteOperad& operad() const { return *o_; }
  const OperadPtr& operad_ptr() const { return o_; }
  const FreeElement& element(int level, int i) const { return elements_[level][i]; }
  /// -1 when absent.
  int index(int level, const FreeElement& e) const;
  /// Least representative of the Aut orbit of (op, tuple).
  FreeElement normalize(int profile, int op, const Tuple& t) const;
  /// Element for an operation at a located profile and a tuple over its frame.
  FreeElement from_frame(const Located& l, int op, const RealizedSet& frame, const Tuple& t) const;
  /// eta: X -> T X; -1 where O(*_V) has no identity.
  int unit(int level, int x) const;
  /// Total arity of an element.
  int arity(int level, int i) const;

 private:
  OperadPtr o_;
  CoeffSystem x_;
  CoeffSystem system_;
  std::vector<std::vector<FreeElement>> elements_;
  std::vector<std::map<FreeElement, int>> index_;
};

/// (T_O X)^V sizes: sum over arities of |(O(S) x prod X^U) / Aut_V(S)|.
CoeffSystem free_algebra(const OperadPtr& o, const CoeffSystem& x);

struct MonadReport {
  std::vector<std::string> violations;
  std::size_t checked = 0;
  std::size_t clipped = 0;  // instances needing a composite beyond the bound
  bool ok() const { return violations.empty(); }
  double coverage() const {
    return checked + clipped == 0 ? 1.0 : static_cast<double>(checked) / static_cast<double>(checked + clipped);
  }
};

struct MonadOptions {
  std::size_t samples = 2000;  // associativity instances per level
  unsigned seed = 0;
};

/// Unit laws on every element of T X, associativity on sampled elements of
/// T T X over T X whose middle and innermost total arities are within the bound.
MonadReport verify_monad_laws(const OperadPtr& o, const CoeffSystem& x, const MonadOptions& opt = {});

struct SplittingReport {
  int operations = 0;      // |O(S)|
  int summand = 0;         // classes of (op, sigma) with sigma in Aut_V(S)
  std::int64_t rest = -1;  // remaining classes of the S summand (-1 if not counted)
  bool ok() const { return summand == operations; }
};
/// The O(S) summand of T_O(S) through Aut_V(S) inside (S^S)^V; o one-color.
SplittingReport splitting_check(const DiscreteOperad& o, const LevelSet& s, std::int64_t count_limit = 200000);

// ---- global sections ----

/// Gamma X = X^G.
int global_sections(const CoeffSystem& x);
/// Constant system on an n-element set.
CoeffSystem inflate(OrbitCategoryPtr oc, int n);

}  // namespace eqv
