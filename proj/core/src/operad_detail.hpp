#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "eqv/operad.hpp"

namespace eqv::detail {

// Points of a realized V-set: y * x_i for the coset reps y of R_cls over eR_level.
class PointIndex {
 public:
  PointIndex(const OrbitCategory& oc, const RealizedSet& a);
  int size() const { return size_; }
  int orbit(int p) const { return orbit_[p]; }
  int rep(int p) const { return rep_[p]; }
  int offset(int orbit) const { return offset_[orbit]; }
  // Point g * x_orbit; throws unless it lies over the base.
  int index(int orbit, int g) const;
  int act(int g, int p) const;
  std::vector<int> map_points(const SetMap& f, const PointIndex& target) const;

 private:
  const OrbitCategory* oc_;
  RealizedSet set_;
  int size_ = 0;
  std::vector<int> offset_;
  std::vector<std::vector<int>> reps_;
  std::vector<int> orbit_;
  std::vector<int> rep_;
};

// Isomorphism alpha: a -> b over the level with fb o alpha = fa, for maps into l.
std::optional<SetMap> match_over(const OrbitCategory& oc, const RealizedSet& a, const SetMap& fa,
                                 const RealizedSet& b, const SetMap& fb, const RealizedSet& l);

// Input profiles Q_i (inhabited, in bound) composable with an inhabited profile.
void for_each_composable(const DiscreteOperad& o, int profile,
                         const std::function<bool(const std::vector<int>&)>& visit, std::size_t* out_of_bound);

}  // namespace eqv::detail
