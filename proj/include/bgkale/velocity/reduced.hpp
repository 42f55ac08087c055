#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bgkale/core/error.hpp"
#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/macro.hpp"

namespace bgkale {

/// Pair of reduced distributions over the velocity nodes. g1 carries the
/// mass in the resolved velocity components, g2 the kinetic energy of the
/// unresolved ones.
struct ReducedPair {
  std::vector<double> g1;
  std::vector<double> g2;

  ReducedPair() = default;
  explicit ReducedPair(std::size_t n) : g1(n, 0.0), g2(n, 0.0) {}
  std::size_t size() const { return g1.size(); }
};

/// Ratio G2 / G1 of the reduced Maxwellians: 2RT in 1D, RT in 2D.
template <int Dim>
constexpr double reduced_energy_factor(double R, double T) {
  return (3 - Dim) * R * T;
}

/// Writes the reduced Maxwellians of `macro` into g1 and g2. Uses the
/// tensor structure of the grid so only (Nv+1) * Dim exponentials are taken.
template <int Dim>
void fill_reduced_maxwellians(const MacroState<Dim>& macro,
                              const VelocityGrid<Dim>& grid, double R,
                              std::span<double> g1, std::span<double> g2) {
  const std::size_t n = grid.axis_size();
  if (macro.rho == 0.0) {
    std::fill(g1.begin(), g1.end(), 0.0);
    std::fill(g2.begin(), g2.end(), 0.0);
    return;
  }
  if (!(macro.T > 0.0) || !(macro.rho > 0.0)) {
    throw UnphysicalState("degenerate Maxwellian: rho=" + std::to_string(macro.rho) +
                          " T=" + std::to_string(macro.T));
  }
  const double rt = R * macro.T;
  const double norm_factor = macro.rho / std::pow(2.0 * std::numbers::pi * rt, 0.5 * Dim);
  const double energy = reduced_energy_factor<Dim>(R, macro.T);
  const auto& v = grid.axis_nodes();

  thread_local std::vector<double> scratch;
  scratch.resize(Dim * n);
  double* axis_factor[Dim];
  for (int d = 0; d < Dim; ++d) {
    axis_factor[d] = scratch.data() + d * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = v[i] - macro.U[d];
      axis_factor[d][i] = std::exp(-c * c / (2.0 * rt));
    }
  }
  if constexpr (Dim == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      g1[i] = norm_factor * axis_factor[0][i];
      g2[i] = energy * g1[i];
    }
  } else {
    for (std::size_t iy = 0; iy < n; ++iy) {
      const double fy = norm_factor * axis_factor[1][iy];
      for (std::size_t ix = 0; ix < n; ++ix) {
        const std::size_t j = ix + n * iy;
        g1[j] = fy * axis_factor[0][ix];
        g2[j] = energy * g1[j];
      }
    }
  }
}

/// Reduced Maxwellians G1, G2 of `macro` evaluated at the grid nodes.
/// Rejects T <= 0 unless rho == 0 (vacuum gives zero distributions).
template <int Dim>
ReducedPair reduced_maxwellians(const MacroState<Dim>& macro,
                                const VelocityGrid<Dim>& grid, double R) {
  ReducedPair out(grid.size());
  fill_reduced_maxwellians(macro, grid, R, std::span<double>(out.g1),
                           std::span<double>(out.g2));
  return out;
}

}  // namespace bgkale
