#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>
#include <vector>

#include "bgkale/core/error.hpp"
#include "bgkale/core/vec.hpp"

namespace bgkale {

/// A point sampled on a domain or body boundary. The normal is a unit
/// vector pointing into the gas; area is the boundary measure it carries.
template <int Dim>
struct BoundarySample {
  Vec<Dim> x{};
  Vec<Dim> normal{};
  double area = 0.0;
  int tag = 0;
};

// ---------------------------------------------------------------------------
// Gas domains

template <int Dim>
class Domain;

/// Interval [lo, hi]; tag 0 is the left end, tag 1 the right end.
template <>
class Domain<1> {
 public:
  Domain() = default;
  Domain(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw ConfigError("interval domain needs hi > lo");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  void set_lo(double v) { lo_ = v; }
  void set_hi(double v) { hi_ = v; }

  bool contains(const Vec<1>& x) const { return x[0] > lo_ && x[0] < hi_; }
  double distance_to_boundary(const Vec<1>& x) const {
    return std::min(std::abs(x[0] - lo_), std::abs(x[0] - hi_));
  }
  Vec<1> lower_corner() const { return {lo_}; }
  Vec<1> upper_corner() const { return {hi_}; }

  std::vector<BoundarySample<1>> sample(double /*dx*/) const {
    return {{{lo_}, {1.0}, 1.0, 0}, {{hi_}, {-1.0}, 1.0, 1}};
  }

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
};

namespace detail {

inline double segment_distance(const Vec<2>& p, const Vec<2>& a, const Vec<2>& b) {
  const Vec<2> ab = b - a;
  const double len2 = norm2(ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

inline bool polygon_contains(const std::vector<Vec<2>>& poly, const Vec<2>& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a[1] > p[1]) != (b[1] > p[1])) {
      const double xc = (b[0] - a[0]) * (p[1] - a[1]) / (b[1] - a[1]) + a[0];
      if (p[0] < xc) inside = !inside;
    }
  }
  return inside;
}

inline double polygon_distance(const std::vector<Vec<2>>& poly, const Vec<2>& p) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    d = std::min(d, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  return d;
}

inline double signed_area(const std::vector<Vec<2>>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

/// Samples a closed polygon at spacing close to dx. Every vertex is a
/// sample; the tag of a vertex is that of the edge leaving it. `inward`
/// selects the left normal of a counter-clockwise polygon (gas inside).
inline std::vector<BoundarySample<2>> sample_polygon(const std::vector<Vec<2>>& poly,
                                                     const std::vector<int>& tags,
                                                     double dx, bool inward) {
  const std::size_t n = poly.size();
  std::vector<BoundarySample<2>> out;
  std::vector<Vec<2>> edge_normal(n);
  std::vector<double> edge_step(n);
  std::vector<int> edge_segments(n);
  for (std::size_t e = 0; e < n; ++e) {
    const Vec<2> t = poly[(e + 1) % n] - poly[e];
    const double len = norm(t);
    const Vec<2> left = {-t[1] / len, t[0] / len};
    edge_normal[e] = inward ? left : Vec<2>{-left[0], -left[1]};
    edge_segments[e] = std::max(1, static_cast<int>(std::lround(len / dx)));
    edge_step[e] = len / edge_segments[e];
  }
  for (std::size_t e = 0; e < n; ++e) {
    const std::size_t prev = (e + n - 1) % n;
    const Vec<2> a = poly[e];
    const Vec<2> t = poly[(e + 1) % n] - a;
    BoundarySample<2> corner;
    corner.x = a;
    // Half of each adjacent segment, as one area vector, so that the samples
    // of a closed polygon sum to zero.
    const Vec<2> av = 0.5 * (edge_step[e] * edge_normal[e] + edge_step[prev] * edge_normal[prev]);
    corner.area = norm(av);
    corner.normal = corner.area > 0.0 ? (1.0 / corner.area) * av : edge_normal[e];
    corner.tag = tags.empty() ? 0 : tags[e];
    out.push_back(corner);
    for (int s = 1; s < edge_segments[e]; ++s) {
      BoundarySample<2> b;
      b.x = a + (static_cast<double>(s) / edge_segments[e]) * t;
      b.normal = edge_normal[e];
      b.area = edge_step[e];
      b.tag = corner.tag;
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace detail

/// Simple polygon given counter-clockwise, with one boundary tag per edge
/// (edge e runs from vertex e to vertex e+1).
template <>
class Domain<2> {
 public:
  Domain() = default;
  Domain(std::vector<Vec<2>> vertices, std::vector<int> edge_tags)
      : vertices_(std::move(vertices)), tags_(std::move(edge_tags)) {
    if (vertices_.size() < 3) throw ConfigError("polygon domain needs 3 vertices");
    if (detail::signed_area(vertices_) < 0.0) {
      std::reverse(vertices_.begin(), vertices_.end());
      if (!tags_.empty()) {
        // Edge e of the reversed polygon is edge n-2-e of the original.
        std::vector<int> t(tags_.size());
        const std::size_t n = tags_.size();
        for (std::size_t e = 0; e < n; ++e) t[e] = tags_[(2 * n - 2 - e) % n];
        tags_ = t;
      }
    }
    if (tags_.empty()) tags_.assign(vertices_.size(), 0);
    if (tags_.size() != vertices_.size()) throw ConfigError("one tag per polygon edge");
  }

  static Domain rectangle(const Vec<2>& lo, const Vec<2>& hi, int bottom, int right,
                          int top, int left) {
    return Domain({{lo[0], lo[1]}, {hi[0], lo[1]}, {hi[0], hi[1]}, {lo[0], hi[1]}},
                  {bottom, right, top, left});
  }

  const std::vector<Vec<2>>& vertices() const { return vertices_; }
  const std::vector<int>& edge_tags() const { return tags_; }

  bool contains(const Vec<2>& x) const { return detail::polygon_contains(vertices_, x); }
  double distance_to_boundary(const Vec<2>& x) const {
    return detail::polygon_distance(vertices_, x);
  }
  Vec<2> lower_corner() const {
    Vec<2> lo = vertices_[0];
    for (const auto& v : vertices_) lo = {std::min(lo[0], v[0]), std::min(lo[1], v[1])};
    return lo;
  }
  Vec<2> upper_corner() const {
    Vec<2> hi = vertices_[0];
    for (const auto& v : vertices_) hi = {std::max(hi[0], v[0]), std::max(hi[1], v[1])};
    return hi;
  }
  std::vector<BoundarySample<2>> sample(double dx) const {
    return detail::sample_polygon(vertices_, tags_, dx, true);
  }

 private:
  std::vector<Vec<2>> vertices_;
  std::vector<int> tags_;
};

// ---------------------------------------------------------------------------
// Rigid-body shapes, described in the body frame (centroid at the origin).

/// 1D plate occupying [-half_width, half_width] with face area `area`.
struct Plate {
  double half_width = 0.1;
  double area = 1.0;
};

struct Circle {
  double radius = 1.0;
};

/// Closed polygon in the body frame. The constructor recentres the vertices
/// on the centroid and orients them counter-clockwise.
struct PolygonShape {
  std::vector<Vec<2>> vertices;

  PolygonShape() = default;
  explicit PolygonShape(std::vector<Vec<2>> v) : vertices(std::move(v)) {
    if (vertices.size() < 3) throw ConfigError("polygon body needs 3 vertices");
    if (detail::signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
    const Vec<2> c = centroid();
    for (auto& p : vertices) p = p - c;
  }

  double area() const { return detail::signed_area(vertices); }

  Vec<2> centroid() const {
    const double a = area();
    Vec<2> c{};
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& p = vertices[i];
      const auto& q = vertices[(i + 1) % vertices.size()];
      const double k = cross(p, q);
      c[0] += (p[0] + q[0]) * k;
      c[1] += (p[1] + q[1]) * k;
    }
    return (1.0 / (6.0 * a)) * c;
  }

  /// Polar second moment of area about the origin.
  double polar_moment() const {
    double j = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const auto& p = vertices[i];
      const auto& q = vertices[(i + 1) % vertices.size()];
      const double k = cross(p, q);
      j += k * (p[0] * p[0] + p[0] * q[0] + q[0] * q[0] + p[1] * p[1] + p[1] * q[1] +
                q[1] * q[1]);
    }
    return j / 12.0;
  }
};

using Shape2 = std::variant<Circle, PolygonShape>;

template <int Dim>
using BodyShape = std::conditional_t<Dim == 1, Plate, Shape2>;

/// Position and orientation of a body frame.
template <int Dim>
struct Pose {
  Vec<Dim> center{};
  double angle = 0.0;

  Vec<Dim> to_world(const Vec<Dim>& local) const {
    if constexpr (Dim == 1) {
      return center + local;
    } else {
      return center + rotate(local, angle);
    }
  }
  Vec<Dim> to_local(const Vec<Dim>& world) const {
    if constexpr (Dim == 1) {
      return world - center;
    } else {
      return rotate(world - center, -angle);
    }
  }
  Vec<Dim> rotate_vector(const Vec<Dim>& local) const {
    if constexpr (Dim == 1) {
      return local;
    } else {
      return rotate(local, angle);
    }
  }
};

inline bool shape_contains(const Plate& s, const Vec<1>& local) {
  return std::abs(local[0]) < s.half_width;
}
inline bool shape_contains(const Shape2& s, const Vec<2>& local) {
  return std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return norm2(local) < sh.radius * sh.radius;
        } else {
          return detail::polygon_contains(sh.vertices, local);
        }
      },
      s);
}

/// Unsigned distance from a body-frame position to the shape boundary.
inline double shape_distance(const Plate& s, const Vec<1>& local) {
  return std::abs(std::abs(local[0]) - s.half_width);
}
inline double shape_distance(const Shape2& s, const Vec<2>& local) {
  return std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return std::abs(norm(local) - sh.radius);
        } else {
          return detail::polygon_distance(sh.vertices, local);
        }
      },
      s);
}

/// Volume (1D: length times face area; 2D: area per unit depth).
inline double shape_volume(const Plate& s) { return 2.0 * s.half_width * s.area; }
inline double shape_volume(const Shape2& s) {
  return std::visit(
      [](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return std::numbers::pi * sh.radius * sh.radius;
        } else {
          return sh.area();
        }
      },
      s);
}

/// Moment of inertia per unit mass about the centroid.
inline double shape_inertia_per_mass(const Plate&) { return 0.0; }
inline double shape_inertia_per_mass(const Shape2& s) {
  return std::visit(
      [](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return 0.5 * sh.radius * sh.radius;
        } else {
          return sh.polar_moment() / sh.area();
        }
      },
      s);
}

/// Body-frame boundary samples with normals pointing out of the body.
inline std::vector<BoundarySample<1>> shape_samples(const Plate& s, double /*dx*/) {
  return {{{-s.half_width}, {-1.0}, s.area, 0}, {{s.half_width}, {1.0}, s.area, 1}};
}
inline std::vector<BoundarySample<2>> shape_samples(const Shape2& s, double dx) {
  return std::visit(
      [&](const auto& sh) {
        using T = std::decay_t<decltype(sh)>;
        std::vector<BoundarySample<2>> out;
        if constexpr (std::is_same_v<T, Circle>) {
          const double perimeter = 2.0 * std::numbers::pi * sh.radius;
          const int n = std::max(8, static_cast<int>(std::lround(perimeter / dx)));
          for (int k = 0; k < n; ++k) {
            const double th = 2.0 * std::numbers::pi * k / n;
            const Vec<2> nrm = {std::cos(th), std::sin(th)};
            out.push_back({sh.radius * nrm, nrm, perimeter / n, k});
          }
        } else {
          out = detail::sample_polygon(sh.vertices, {}, dx, false);
          for (std::size_t k = 0; k < out.size(); ++k) out[k].tag = static_cast<int>(k);
        }
        return out;
      },
      s);
}

}  // namespace bgkale
