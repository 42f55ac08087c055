#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bgkale/cloud/mls.hpp"
#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/cloud/region.hpp"
#include "bgkale/core/error.hpp"

namespace bgkale {

template <int Dim>
struct ManagementParams {
  double theta_merge = 0.55;
  double hole_factor = 1.8;
  std::size_t m_min = Dim == 1 ? 3 : 6;
};

struct ChangeReport {
  std::vector<std::uint64_t> added;
  std::vector<std::uint64_t> removed;
  std::size_t merges = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;

  bool changed() const { return !added.empty() || !removed.empty(); }
  void append(const ChangeReport& o) {
    added.insert(added.end(), o.added.begin(), o.added.end());
    removed.insert(removed.end(), o.removed.begin(), o.removed.end());
    merges += o.merges;
    insertions += o.insertions;
    deletions += o.deletions;
  }
};

namespace detail {

template <int Dim>
struct PendingPoint {
  Vec<Dim> x;
  std::vector<double> values;
};

template <int Dim>
void add_pending(PointCloud<Dim>& cloud, std::vector<PendingPoint<Dim>>& pending,
                 ChangeReport& report) {
  for (auto& p : pending) {
    const std::size_t i = cloud.add_point(p.x, PointKind::Interior);
    std::copy(p.values.begin(), p.values.end(), cloud.row(i).begin());
    report.added.push_back(cloud.id(i));
  }
  pending.clear();
}

template <int Dim>
std::vector<double> interpolate_at(const PointCloud<Dim>& cloud, const Vec<Dim>& x,
                                   std::size_t m_min,
                                   const std::function<bool(std::size_t)>& skip = {}) {
  std::vector<double> v(cloud.width());
  mls_interpolate_row(cloud, mls_weights(cloud, x, m_min, skip), v);
  return v;
}

template <int Dim>
bool far_from(const std::vector<PendingPoint<Dim>>& pending, const Vec<Dim>& x, double r) {
  for (const auto& p : pending)
    if (norm(p.x - x) < r) return false;
  return true;
}

/// Interior points outside the gas or within theta dx of a boundary point.
template <int Dim>
void remove_swallowed(PointCloud<Dim>& cloud, const GasRegion<Dim>& region,
                      const ManagementParams<Dim>& prm, ChangeReport& report) {
  const double r = prm.theta_merge * cloud.dx();
  std::vector<bool> drop(cloud.size(), false);
  std::vector<std::size_t> ball;
  bool any = false;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.kind(i) != PointKind::Interior) continue;
    bool bad = !region.admissible(cloud.position(i));
    if (!bad) {
      ball.clear();
      cloud.query_ball(cloud.position(i), r, ball);
      for (std::size_t k : ball)
        if (is_boundary(cloud.kind(k)) && norm(cloud.position(k) - cloud.position(i)) < r)
          bad = true;
    }
    if (bad) {
      drop[i] = true;
      any = true;
      report.removed.push_back(cloud.id(i));
      ++report.deletions;
    }
  }
  if (any) {
    cloud.remove_if(drop);
    cloud.rebuild_index();
  }
}

/// One greedy pass merging interior pairs closer than theta dx. Returns
/// the number of merged pairs.
template <int Dim>
std::size_t merge_pass(PointCloud<Dim>& cloud, const ManagementParams<Dim>& prm,
                       ChangeReport& report) {
  const double r = prm.theta_merge * cloud.dx();
  struct Pair {
    double d;
    std::size_t a, b;
  };
  std::vector<Pair> pairs;
  std::vector<std::size_t> ball;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.kind(i) != PointKind::Interior) continue;
    ball.clear();
    cloud.query_ball(cloud.position(i), r, ball);
    for (std::size_t k : ball) {
      if (k <= i || cloud.kind(k) != PointKind::Interior) continue;
      const double d = norm(cloud.position(k) - cloud.position(i));
      if (d < r) pairs.push_back({d, i, k});
    }
  }
  if (pairs.empty()) return 0;
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    return p.d < q.d || (p.d == q.d && (p.a < q.a || (p.a == q.a && p.b < q.b)));
  });
  std::vector<bool> used(cloud.size(), false);
  std::vector<PendingPoint<Dim>> pending;
  for (const auto& p : pairs) {
    if (used[p.a] || used[p.b]) continue;
    used[p.a] = used[p.b] = true;
    const Vec<Dim> mid = 0.5 * (cloud.position(p.a) + cloud.position(p.b));
    std::vector<double> v;
    try {
      v = interpolate_at(cloud, mid, prm.m_min, [&](std::size_t k) { return used[k]; });
    } catch (const InsufficientNeighbors&) {
      v.resize(cloud.width());
      const auto ra = cloud.row(p.a);
      const auto rb = cloud.row(p.b);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = 0.5 * (ra[j] + rb[j]);
    }
    pending.push_back({mid, std::move(v)});
    report.removed.push_back(cloud.id(p.a));
    report.removed.push_back(cloud.id(p.b));
    ++report.merges;
  }
  const std::size_t merged = pending.size();
  cloud.remove_if(used);
  add_pending(cloud, pending, report);
  cloud.rebuild_index();
  return merged;
}

template <int Dim>
bool insertion_site_ok(const PointCloud<Dim>& cloud, const GasRegion<Dim>& region,
                       const std::vector<PendingPoint<Dim>>& pending, const Vec<Dim>& x,
                       double min_gap) {
  return region.admissible(x) && cloud.nearest_distance(x, min_gap) > min_gap &&
         far_from(pending, x, min_gap);
}

/// Midpoints of neighbour pairs farther apart than hole_factor dx.
template <int Dim>
void fill_holes(PointCloud<Dim>& cloud, const GasRegion<Dim>& region,
                const ManagementParams<Dim>& prm, ChangeReport& report) {
  const double gap = prm.hole_factor * cloud.dx();
  const double clear = 0.5 * prm.hole_factor * cloud.dx();
  std::vector<PendingPoint<Dim>> pending;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t k : cloud.neighbors(i)) {
      if (k <= i) continue;
      if (norm(cloud.position(k) - cloud.position(i)) <= gap) continue;
      const Vec<Dim> mid = 0.5 * (cloud.position(i) + cloud.position(k));
      if (!insertion_site_ok(cloud, region, pending, mid, clear)) continue;
      pending.push_back({mid, interpolate_at(cloud, mid, prm.m_min)});
      ++report.insertions;
    }
  }
  if (!pending.empty()) {
    add_pending(cloud, pending, report);
    cloud.rebuild_index();
  }
}

/// Interior points with fewer than m_min neighbours receive a point at the
/// most isolated midpoint between themselves and a point within 2h.
template <int Dim>
void fill_sparse(PointCloud<Dim>& cloud, const GasRegion<Dim>& region,
                 const ManagementParams<Dim>& prm, ChangeReport& report) {
  const double min_gap = prm.theta_merge * cloud.dx();
  std::vector<PendingPoint<Dim>> pending;
  std::vector<std::size_t> ball;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.kind(i) != PointKind::Interior) continue;
    if (cloud.neighbors(i).size() - 1 >= prm.m_min) continue;
    ball.clear();
    cloud.query_ball(cloud.position(i), 2.0 * cloud.h(), ball);
    double best = 0.0;
    Vec<Dim> site{};
    for (std::size_t k : ball) {
      if (k == i) continue;
      const Vec<Dim> mid = 0.5 * (cloud.position(i) + cloud.position(k));
      if (!region.admissible(mid) || !far_from(pending, mid, min_gap)) continue;
      const double d = cloud.nearest_distance(mid, cloud.h());
      if (d > best) {
        best = d;
        site = mid;
      }
    }
    if (best > min_gap) {
      pending.push_back({site, interpolate_at(cloud, site, prm.m_min)});
      ++report.insertions;
    }
  }
  if (!pending.empty()) {
    add_pending(cloud, pending, report);
    cloud.rebuild_index();
  }
}

}  // namespace detail

/// Checks the cloud quality invariants: every pair involving an interior
/// point is at least theta dx apart and every interior point has m_min
/// neighbours besides itself. Returns an empty string when they hold.
template <int Dim>
std::string check_cloud(const PointCloud<Dim>& cloud, const ManagementParams<Dim>& prm) {
  const double r = prm.theta_merge * cloud.dx() * (1.0 - 1e-12);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.kind(i) != PointKind::Interior) continue;
    const auto nb = cloud.neighbors(i);
    if (nb.size() - 1 < prm.m_min)
      return "interior point " + std::to_string(cloud.id(i)) + " has " +
             std::to_string(nb.size() - 1) + " neighbours";
    for (std::size_t k : nb)
      if (k != i && norm(cloud.position(k) - cloud.position(i)) < r)
        return "points " + std::to_string(cloud.id(i)) + " and " +
               std::to_string(cloud.id(k)) + " closer than the merge distance";
  }
  return {};
}

/// Restores the cloud quality after motion: drops interior points that
/// left the gas or touch a boundary point, merges close pairs into their
/// midpoint, fills holes and sparse neighbourhoods. New values come from
/// MLS interpolation. Throws ManagementError if the result still violates
/// check_cloud.
template <int Dim>
ChangeReport manage_points(PointCloud<Dim>& cloud, const GasRegion<Dim>& region,
                           const ManagementParams<Dim>& prm = {}) {
  if (!cloud.index_current()) cloud.rebuild_index();
  ChangeReport report;
  detail::remove_swallowed(cloud, region, prm, report);
  for (int pass = 0; pass < 32; ++pass)
    if (detail::merge_pass(cloud, prm, report) == 0) break;
  detail::fill_holes(cloud, region, prm, report);
  detail::fill_sparse(cloud, region, prm, report);
  const std::string problem = check_cloud(cloud, prm);
  if (!problem.empty()) throw ManagementError(problem);
  return report;
}

/// Removes the interior points swept by solids at their current poses and
/// refills the vacated region behind them.
template <int Dim>
ChangeReport resolve_points_vs_body(PointCloud<Dim>& cloud, const GasRegion<Dim>& region,
                                    const ManagementParams<Dim>& prm = {}) {
  return manage_points(cloud, region, prm);
}

}  // namespace bgkale
