#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/cloud/region.hpp"

namespace bgkale {

/// Adds the boundary samples of solid `s` at its current pose.
template <int Dim>
void add_solid_samples(PointCloud<Dim>& cloud, const SolidPlacement<Dim>& solid, int body,
                       double dx) {
  const auto samples = shape_samples(solid.shape, dx);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& b = samples[k];
    cloud.add_point(solid.pose.to_world(b.x), PointKind::BodyBoundary,
                    solid.pose.rotate_vector(b.normal), b.area, b.tag, body,
                    static_cast<int>(k));
  }
}

/// Boundary points at spacing dx on the domain and on every solid, then
/// interior points. In 1D each gas interval is split evenly; in 2D the
/// interior is a lattice of spacing close to dx, keeping the points that lie
/// in the gas at least 0.6 dx away from every boundary.
template <int Dim>
PointCloud<Dim> initialize_cloud(const GasRegion<Dim>& region, double dx, double h,
                                 double alpha, std::size_t width) {
  PointCloud<Dim> cloud(h, dx, alpha, width);
  const auto domain_samples = region.domain.sample(dx);
  for (std::size_t k = 0; k < domain_samples.size(); ++k) {
    const auto& b = domain_samples[k];
    cloud.add_point(b.x, PointKind::DomainBoundary, b.normal, b.area, b.tag, -1,
                    static_cast<int>(k));
  }
  for (std::size_t s = 0; s < region.solids.size(); ++s)
    add_solid_samples(cloud, region.solids[s], static_cast<int>(s), dx);

  if constexpr (Dim == 1) {
    std::vector<std::pair<double, double>> cuts;
    for (const auto& s : region.solids)
      cuts.emplace_back(s.pose.center[0] - s.shape.half_width,
                        s.pose.center[0] + s.shape.half_width);
    std::sort(cuts.begin(), cuts.end());
    double left = region.domain.lo();
    auto fill = [&](double a, double b) {
      if (!(b > a)) return;
      const int n = std::max(1, static_cast<int>(std::lround((b - a) / dx)));
      for (int k = 1; k < n; ++k)
        cloud.add_point({a + (b - a) * k / n}, PointKind::Interior);
    };
    for (const auto& [a, b] : cuts) {
      fill(left, a);
      left = std::max(left, b);
    }
    fill(left, region.domain.hi());
  } else {
    const Vec<2> lo = region.domain.lower_corner();
    const Vec<2> hi = region.domain.upper_corner();
    std::array<int, 2> n{};
    Vec<2> step{};
    for (int d = 0; d < 2; ++d) {
      n[d] = std::max(1, static_cast<int>(std::lround((hi[d] - lo[d]) / dx)));
      step[d] = (hi[d] - lo[d]) / n[d];
    }
    for (int iy = 1; iy < n[1]; ++iy)
      for (int ix = 1; ix < n[0]; ++ix) {
        const Vec<2> p = {lo[0] + ix * step[0], lo[1] + iy * step[1]};
        if (region.admissible(p) && region.clearance(p) >= 0.6 * dx)
          cloud.add_point(p, PointKind::Interior);
      }
  }
  cloud.rebuild_index();
  return cloud;
}

}  // namespace bgkale
