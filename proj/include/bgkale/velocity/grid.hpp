#pragma once

#include <cstddef>
#include <vector>

#include "bgkale/core/error.hpp"
#include "bgkale/core/vec.hpp"

namespace bgkale {

/// Uniform tensor grid of discrete velocities on [-vmax, vmax]^Dim with
/// trapezoidal quadrature weights. Immutable after construction.
///
/// Nodes are ordered with the first axis fastest: j = ix + n * iy.
template <int Dim>
class VelocityGrid {
  static_assert(Dim == 1 || Dim == 2);

 public:
  VelocityGrid(double vmax, int segments) : vmax_(vmax), segments_(segments) {
    if (segments < 1) throw ConfigError("velocity grid needs at least one segment");
    if (!(vmax > 0.0)) throw ConfigError("velocity grid needs vmax > 0");
    spacing_ = 2.0 * vmax / segments;
    const int n = segments + 1;
    axis_nodes_.resize(n);
    axis_weights_.assign(n, spacing_);
    for (int i = 0; i < n; ++i) axis_nodes_[i] = -vmax + i * spacing_;
    // Exact endpoints and symmetry regardless of rounding in the sum above.
    axis_nodes_.front() = -vmax;
    axis_nodes_.back() = vmax;
    for (int i = 0; i < n / 2; ++i) axis_nodes_[n - 1 - i] = -axis_nodes_[i];
    if (n % 2 == 1) axis_nodes_[n / 2] = 0.0;
    axis_weights_.front() *= 0.5;
    axis_weights_.back() *= 0.5;

    std::size_t total = 1;
    for (int d = 0; d < Dim; ++d) total *= static_cast<std::size_t>(n);
    nodes_.resize(total);
    weights_.resize(total);
    for (std::size_t j = 0; j < total; ++j) {
      std::size_t rem = j;
      double w = 1.0;
      for (int d = 0; d < Dim; ++d) {
        const std::size_t i = rem % n;
        rem /= n;
        nodes_[j][d] = axis_nodes_[i];
        w *= axis_weights_[i];
      }
      weights_[j] = w;
    }
  }

  static constexpr int dim() { return Dim; }
  double vmax() const { return vmax_; }
  int segments() const { return segments_; }
  double spacing() const { return spacing_; }
  std::size_t axis_size() const { return axis_nodes_.size(); }
  std::size_t size() const { return nodes_.size(); }

  const std::vector<double>& axis_nodes() const { return axis_nodes_; }
  const std::vector<double>& axis_weights() const { return axis_weights_; }
  const std::vector<Vec<Dim>>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const Vec<Dim>& node(std::size_t j) const { return nodes_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }

 private:
  double vmax_;
  int segments_;
  double spacing_ = 0.0;
  std::vector<double> axis_nodes_;
  std::vector<double> axis_weights_;
  std::vector<Vec<Dim>> nodes_;
  std::vector<double> weights_;
};

template <int Dim>
VelocityGrid<Dim> make_velocity_grid(double vmax, int segments) {
  return VelocityGrid<Dim>(vmax, segments);
}

}  // namespace bgkale
