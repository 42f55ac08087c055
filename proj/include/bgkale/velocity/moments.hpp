#pragma once

#include <span>
#include <string>

#include "bgkale/core/error.hpp"
#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/macro.hpp"
#include "bgkale/velocity/reduced.hpp"

namespace bgkale {

/// Raw quadrature sums of a reduced pair.
template <int Dim>
struct RawMoments {
  double mass = 0.0;            // sum w g1
  Vec<Dim> momentum{};          // sum w v g1
  double g2_mass = 0.0;         // sum w g2
};

template <int Dim>
RawMoments<Dim> raw_moments(std::span<const double> g1, std::span<const double> g2,
                            const VelocityGrid<Dim>& grid) {
  RawMoments<Dim> m;
  const auto& w = grid.weights();
  const auto& v = grid.nodes();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double wg = w[j] * g1[j];
    m.mass += wg;
    for (int d = 0; d < Dim; ++d) m.momentum[d] += wg * v[j][d];
    m.g2_mass += w[j] * g2[j];
  }
  return m;
}

/// The energy combination  sum w |v - U|^2 g1 + sum w g2  which equals
/// 3 rho R T for a pair with mean velocity U.
template <int Dim>
double energy_moment(std::span<const double> g1, std::span<const double> g2,
                     const VelocityGrid<Dim>& grid, const Vec<Dim>& U) {
  const auto& w = grid.weights();
  const auto& v = grid.nodes();
  double s = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    s += w[j] * (norm2(v[j] - U) * g1[j] + g2[j]);
  }
  return s;
}

/// Density, mean velocity and temperature of a reduced pair. A vacuum pair
/// yields the zero state; a negative mass raises UnphysicalState.
template <int Dim>
MacroState<Dim> compute_moments(std::span<const double> g1, std::span<const double> g2,
                                const VelocityGrid<Dim>& grid, double R) {
  if (g1.size() != grid.size() || g2.size() != grid.size()) {
    throw ConfigError("reduced pair does not match the velocity grid");
  }
  const RawMoments<Dim> raw = raw_moments(g1, g2, grid);
  MacroState<Dim> out;
  if (raw.mass < 0.0) {
    throw UnphysicalState("negative density " + std::to_string(raw.mass));
  }
  if (raw.mass == 0.0) return out;
  out.rho = raw.mass;
  out.U = (1.0 / raw.mass) * raw.momentum;
  out.T = energy_moment(g1, g2, grid, out.U) / (3.0 * out.rho * R);
  return out;
}

template <int Dim>
MacroState<Dim> compute_moments(const ReducedPair& pair, const VelocityGrid<Dim>& grid,
                                double R) {
  return compute_moments(std::span<const double>(pair.g1),
                         std::span<const double>(pair.g2), grid, R);
}

}  // namespace bgkale
