#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqv/coeff_system.hpp"
#include "eqv/gset.hpp"
#include "eqv/orbit_category.hpp"
#include "eqv/windex.hpp"

namespace eqv {

/// Span left <- apex -> right of finite sets with a common acting group.
struct Span {
  GSet left;
  GSet apex;
  GSet right;
  std::vector<int> back;  // apex -> left
  std::vector<int> fwd;   // apex -> right
};

bool is_span(const Span& s);
Span identity_span(const GSet& x);
Span span_from_maps(const GMap& back, const GMap& fwd);
/// left <- source = source -> target style spans of a single map.
Span restriction_span(const GMap& f);  // target <- source = source
Span transfer_span(const GMap& f);     // source = source -> target

/// g after f.
GMap compose_maps(const GMap& f, const GMap& g);
/// Identity of a set as a map.
GMap identity_gmap(const GSet& x);

/// s2 after s1 (s1: X -> Y, s2: Y -> Z); the middle feet must coincide.
Span compose_spans(const Span& s1, const Span& s2);
/// As above, with an explicit isomorphism from s1's right foot to s2's left foot.
Span compose_spans(const Span& s1, const Span& s2, const std::vector<int>& middle_iso);

/// Apex isomorphism commuting with both legs, if one exists.
std::optional<std::vector<int>> span_isomorphism(const Span& a, const Span& b);
bool spans_isomorphic(const Span& a, const Span& b);
/// Same span with the apex relabelled in orbit order.
Span canonicalize_span(const Span& s);

/// Levelwise cartesian product of two spans.
Span smash_spans(const Span& a, const Span& b);

/// Forward leg lies in the weak indexing category.
bool span_in(const WeakIndexingSystem& w, const Span& s);

/// Uniformly random equivariant map x -> y (orbitwise choice of basepoint images).
std::optional<GMap> random_equivariant_map(const GSet& x, const GSet& y, std::mt19937& rng);
/// Random G-set with at most `max_points` points.
GSet random_gset(const OrbitCategory& oc, int max_points, std::mt19937& rng);

// ---- counting ----
/// Number of spans x <- R -> y up to isomorphism, by apex cardinality 0..max_apex,
/// by enumerating apexes and leg pairs.
std::vector<std::int64_t> span_counts(const OrbitCategory& oc, const GSet& x, const GSet& y, int max_apex);
/// Cardinalities of the transitive sets over x * y; spans up to iso are the
/// finite multisets of these.
std::vector<int> span_atoms(const OrbitCategory& oc, const GSet& x, const GSet& y);
/// Multisets of atoms by total size.
std::vector<std::int64_t> series_from_atoms(const std::vector<int>& atoms, int max_size);
std::vector<std::int64_t> convolve(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

struct SemiadditivityReport {
  bool additive = false;     // Hom(X + X', Y) = Hom(X, Y) * Hom(X', Y)
  bool dual = false;         // Hom(X, Y) = Hom(Y, X)
  bool atoms_match = false;  // brute-force counts agree with the atom series
  std::string message;
};
SemiadditivityReport check_semiadditivity(const OrbitCategory& oc, const GSet& x, const GSet& x2, const GSet& y,
                                          int max_apex);

// ---- semi-Mackey functors ----
/// Product-preserving functor on spans of G-sets, tabulated on orbits:
/// a coefficient system of commutative monoids (restrictions) together with
/// transfers X^k -> X^h along every orbit morphism k -> h.
class SemiMackey {
 public:
  SemiMackey(CoeffSystem values, std::vector<std::vector<int>> transfer);

  const CoeffSystem& values() const { return values_; }
  const OrbitCategory& category() const { return values_.category(); }
  int transfer(int morphism, int x) const { return transfer_[morphism][x]; }
  const std::vector<std::vector<int>>& transfers() const { return transfer_; }
  /// Empty when functorial: monoid structure, additive transfers,
  /// transfer functoriality, isomorphism compatibility and the double coset formula.
  std::string violation() const;

  friend bool operator==(const SemiMackey& a, const SemiMackey& b) {
    return a.values_ == b.values_ && a.transfer_ == b.transfer_;
  }

 private:
  CoeffSystem values_;
  std::vector<std::vector<int>> transfer_;
};

/// Orbits of a G-set with a basepoint whose stabilizer is exactly the
/// representative of its class.
struct OrbitBasis {
  std::vector<int> level;       // class of each orbit
  std::vector<int> base;        // basepoint of each orbit
  std::vector<int> orbit_of;    // orbit of each point
  std::vector<int> translator;  // per point p: some g with g * base = p
};
OrbitBasis orbit_basis(const OrbitCategory& oc, const GSet& x);

/// An element of M(X): one value per orbit, in orbit order.
using MackeyElement = std::vector<int>;
std::int64_t mackey_size(const SemiMackey& m, const GSet& x);
std::vector<MackeyElement> mackey_elements(const SemiMackey& m, const GSet& x, std::size_t cap = 100000);
MackeyElement mackey_restrict(const SemiMackey& m, const GMap& f, const MackeyElement& y);
MackeyElement mackey_transfer(const SemiMackey& m, const GMap& f, const MackeyElement& x);
MackeyElement evaluate(const SemiMackey& m, const Span& s, const MackeyElement& x);
/// Orbit morphism id underlying f on orbit a of f.source.
int orbit_map_morphism(const OrbitCategory& oc, const GMap& f, const OrbitBasis& src, const OrbitBasis& tgt, int a);

/// Iso classes of H-sets with orbit counts saturated at cap, with
/// restriction and induction.
SemiMackey truncated_burnside(OrbitCategoryPtr oc, int cap);
SemiMackey terminal_mackey(OrbitCategoryPtr oc);

}  // namespace eqv
