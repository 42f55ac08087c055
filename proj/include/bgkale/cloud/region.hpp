#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "bgkale/cloud/geometry.hpp"

namespace bgkale {

/// A rigid shape at a world pose.
template <int Dim>
struct SolidPlacement {
  BodyShape<Dim> shape;
  Pose<Dim> pose;
};

/// The region occupied by gas: the domain minus every solid.
template <int Dim>
struct GasRegion {
  Domain<Dim> domain;
  std::vector<SolidPlacement<Dim>> solids;

  bool inside_solid(const Vec<Dim>& x) const {
    for (const auto& s : solids)
      if (shape_contains(s.shape, s.pose.to_local(x))) return true;
    return false;
  }

  bool admissible(const Vec<Dim>& x) const { return domain.contains(x) && !inside_solid(x); }

  /// Distance to the nearest domain or solid boundary.
  double clearance(const Vec<Dim>& x) const {
    double d = domain.distance_to_boundary(x);
    for (const auto& s : solids) d = std::min(d, shape_distance(s.shape, s.pose.to_local(x)));
    return d;
  }
};

}  // namespace bgkale
