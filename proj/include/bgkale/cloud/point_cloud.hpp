#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "bgkale/core/error.hpp"
#include "bgkale/core/vec.hpp"

namespace bgkale {

enum class PointKind : std::uint8_t { Interior, DomainBoundary, BodyBoundary };

inline bool is_boundary(PointKind k) { return k != PointKind::Interior; }

/// Uniform grid of cells with side h over the bounding box of a point set.
/// Points are bucketed by sorting (cell key, point id) pairs.
template <int Dim>
class VoxelIndex {
 public:
  void build(std::span<const Vec<Dim>> x, double h) {
    h_ = h;
    if (x.empty()) {
      keys_.clear();
      ids_.clear();
      return;
    }
    lo_ = x[0];
    Vec<Dim> hi = x[0];
    for (const auto& p : x)
      for (int d = 0; d < Dim; ++d) {
        lo_[d] = std::min(lo_[d], p[d]);
        hi[d] = std::max(hi[d], p[d]);
      }
    for (int d = 0; d < Dim; ++d)
      dims_[d] = static_cast<std::int64_t>(std::floor((hi[d] - lo_[d]) / h)) + 1;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      entries[i] = {key(cell_of(x[i])), static_cast<std::uint32_t>(i)};
    std::sort(entries.begin(), entries.end());
    keys_.resize(entries.size());
    ids_.resize(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      keys_[i] = entries[i].first;
      ids_[i] = entries[i].second;
    }
  }

  /// Calls visit(id) for every indexed point in the cells that can hold
  /// points within `radius` of p. The caller filters by distance.
  template <class Visit>
  void for_each_candidate(const Vec<Dim>& p, double radius, Visit&& visit) const {
    if (keys_.empty()) return;
    const std::int64_t reach = static_cast<std::int64_t>(std::ceil(radius / h_));
    std::array<std::int64_t, Dim> c{};
    for (int d = 0; d < Dim; ++d) c[d] = static_cast<std::int64_t>(std::floor((p[d] - lo_[d]) / h_));
    std::array<std::int64_t, Dim> lo{}, hi{};
    for (int d = 0; d < Dim; ++d) {
      lo[d] = std::max<std::int64_t>(0, c[d] - reach);
      hi[d] = std::min<std::int64_t>(dims_[d] - 1, c[d] + reach);
      if (lo[d] > hi[d]) return;
    }
    if constexpr (Dim == 1) {
      visit_range(key({lo[0]}), key({hi[0]}), visit);
    } else {
      // Cells of one row of y are contiguous in key order.
      for (std::int64_t cy = lo[1]; cy <= hi[1]; ++cy)
        visit_range(key({lo[0], cy}), key({hi[0], cy}), visit);
    }
  }

  double cell_size() const { return h_; }

 private:
  std::array<std::int64_t, Dim> cell_of(const Vec<Dim>& p) const {
    std::array<std::int64_t, Dim> c{};
    for (int d = 0; d < Dim; ++d)
      c[d] = std::clamp<std::int64_t>(
          static_cast<std::int64_t>(std::floor((p[d] - lo_[d]) / h_)), 0, dims_[d] - 1);
    return c;
  }
  std::uint64_t key(const std::array<std::int64_t, Dim>& c) const {
    if constexpr (Dim == 1) {
      return static_cast<std::uint64_t>(c[0]);
    } else {
      return static_cast<std::uint64_t>(c[1] * dims_[0] + c[0]);
    }
  }
  template <class Visit>
  void visit_range(std::uint64_t first, std::uint64_t last, Visit& visit) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), first);
    for (; it != keys_.end() && *it <= last; ++it) visit(static_cast<std::size_t>(ids_[it - keys_.begin()]));
  }

  double h_ = 1.0;
  Vec<Dim> lo_{};
  std::array<std::int64_t, Dim> dims_{};
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> ids_;
};

/// Neighbour sets of one point. `all` is the ball of radius h (self
/// included). lower[a] / upper[a] hold the points with x_k[a] <= x_i[a] and
/// x_k[a] >= x_i[a]; ties and self belong to both.
template <int Dim>
struct NeighborSets {
  std::vector<std::size_t> all;
  std::array<std::vector<std::size_t>, Dim> lower;
  std::array<std::vector<std::size_t>, Dim> upper;
};

/// Movable point set carrying `width` values per point (row-major).
///
/// After any position change, rebuild_index() must run before neighbour
/// queries; management and motion helpers mark the index stale.
template <int Dim>
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(double h, double dx, double alpha, std::size_t width)
      : h_(h), dx_(dx), alpha_(alpha), width_(width) {
    if (!(dx > 0.0)) throw ConfigError("point spacing must be positive");
    if (!(dx < h)) throw ConfigError("point spacing must be smaller than the radius h");
  }

  std::size_t size() const { return x_.size(); }
  std::size_t width() const { return width_; }
  double h() const { return h_; }
  double dx() const { return dx_; }
  double alpha() const { return alpha_; }

  std::size_t add_point(const Vec<Dim>& x, PointKind kind, const Vec<Dim>& normal = {},
                        double area = 0.0, int tag = -1, int body = -1, int sample = -1) {
    x_.push_back(x);
    kind_.push_back(kind);
    normal_.push_back(normal);
    area_.push_back(area);
    tag_.push_back(tag);
    body_.push_back(body);
    sample_.push_back(sample);
    id_.push_back(next_id_++);
    values_.resize(values_.size() + width_, 0.0);
    index_current_ = false;
    return x_.size() - 1;
  }

  /// Drops the points whose flag is set, keeping the order of the rest.
  void remove_if(const std::vector<bool>& drop) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (drop[i]) continue;
      if (out != i) {
        x_[out] = x_[i];
        kind_[out] = kind_[i];
        normal_[out] = normal_[i];
        area_[out] = area_[i];
        tag_[out] = tag_[i];
        body_[out] = body_[i];
        sample_[out] = sample_[i];
        id_[out] = id_[i];
        std::copy_n(values_.begin() + i * width_, width_, values_.begin() + out * width_);
      }
      ++out;
    }
    x_.resize(out);
    kind_.resize(out);
    normal_.resize(out);
    area_.resize(out);
    tag_.resize(out);
    body_.resize(out);
    sample_.resize(out);
    id_.resize(out);
    values_.resize(out * width_);
    index_current_ = false;
  }

  const Vec<Dim>& position(std::size_t i) const { return x_[i]; }
  void set_position(std::size_t i, const Vec<Dim>& p) {
    x_[i] = p;
    index_current_ = false;
  }
  std::span<const Vec<Dim>> positions() const { return x_; }

  PointKind kind(std::size_t i) const { return kind_[i]; }
  const Vec<Dim>& normal(std::size_t i) const { return normal_[i]; }
  void set_normal(std::size_t i, const Vec<Dim>& n) { normal_[i] = n; }
  double area(std::size_t i) const { return area_[i]; }
  int tag(std::size_t i) const { return tag_[i]; }
  int body(std::size_t i) const { return body_[i]; }
  int sample(std::size_t i) const { return sample_[i]; }
  std::uint64_t id(std::size_t i) const { return id_[i]; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * width_, width_}; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * width_, width_};
  }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  // -- spatial index ------------------------------------------------------

  /// Rebuilds the voxel index and the neighbour table. O(N log N).
  void rebuild_index() {
    index_.build(x_, h_);
    offsets_.assign(x_.size() + 1, 0);
    neighbors_.clear();
    std::vector<std::size_t> buf;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      buf.clear();
      query_ball(x_[i], h_, buf);
      std::sort(buf.begin(), buf.end());
      neighbors_.insert(neighbors_.end(), buf.begin(), buf.end());
      offsets_[i + 1] = neighbors_.size();
    }
    index_current_ = true;
  }

  bool index_current() const { return index_current_; }

  /// Ids of the points within distance `radius` of p (any radius; cells
  /// farther than h are scanned as needed).
  void query_ball(const Vec<Dim>& p, double radius, std::vector<std::size_t>& out) const {
    const double r2 = radius * radius;
    index_.for_each_candidate(p, radius, [&](std::size_t k) {
      if (norm2(x_[k] - p) <= r2) out.push_back(k);
    });
  }

  /// Ball of radius h around point i, self included, ascending ids.
  std::span<const std::size_t> neighbors(std::size_t i) const {
    assert(index_current_ && "neighbour query on a stale index");
    return {neighbors_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  /// Directional classification of the ball around point i.
  NeighborSets<Dim> neighbors_within(std::size_t i) const {
    NeighborSets<Dim> s;
    for (std::size_t k : neighbors(i)) {
      s.all.push_back(k);
      for (int a = 0; a < Dim; ++a) {
        if (x_[k][a] <= x_[i][a]) s.lower[a].push_back(k);
        if (x_[k][a] >= x_[i][a]) s.upper[a].push_back(k);
      }
    }
    return s;
  }

  /// Distance from p to the nearest indexed point within `radius`
  /// (infinity if none).
  double nearest_distance(const Vec<Dim>& p, double radius) const {
    double best = std::numeric_limits<double>::infinity();
    index_.for_each_candidate(p, radius, [&](std::size_t k) {
      best = std::min(best, norm(x_[k] - p));
    });
    return best <= radius ? best : std::numeric_limits<double>::infinity();
  }

 private:
  double h_ = 1.0;
  double dx_ = 0.5;
  double alpha_ = 6.0;
  std::size_t width_ = 0;

  std::vector<Vec<Dim>> x_;
  std::vector<PointKind> kind_;
  std::vector<Vec<Dim>> normal_;
  std::vector<double> area_;
  std::vector<int> tag_;
  std::vector<int> body_;
  std::vector<int> sample_;
  std::vector<std::uint64_t> id_;
  std::vector<double> values_;
  std::uint64_t next_id_ = 0;

  VoxelIndex<Dim> index_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> neighbors_;
  bool index_current_ = false;
};

/// Free-function spellings of the index operations.
template <int Dim>
void rebuild_index(PointCloud<Dim>& cloud) {
  cloud.rebuild_index();
}

template <int Dim>
NeighborSets<Dim> neighbors_within(const PointCloud<Dim>& cloud, std::size_t i) {
  return cloud.neighbors_within(i);
}

/// Gaussian weight exp(-alpha |d|^2 / h^2), zero outside the ball of radius h.
template <int Dim>
double weight(const Vec<Dim>& d, double h, double alpha) {
  const double r2 = norm2(d) / (h * h);
  return r2 <= 1.0 ? std::exp(-alpha * r2) : 0.0;
}

}  // namespace bgkale
