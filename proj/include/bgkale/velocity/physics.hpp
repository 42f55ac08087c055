#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "bgkale/core/error.hpp"
#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/macro.hpp"

namespace bgkale {

/// Hard-sphere mean free path kB / (sqrt(2) pi rho R d^2).
inline double mean_free_path(double rho, const GasProperties& gas) {
  if (!(rho > 0.0)) throw UnphysicalState("mean free path needs rho > 0");
  return gas.kB / (std::numbers::sqrt2 * std::numbers::pi * rho * gas.R * gas.d * gas.d);
}

/// Mean thermal speed sqrt(8 R T / pi).
inline double mean_thermal_speed(double T, const GasProperties& gas) {
  return std::sqrt(8.0 * gas.R * T / std::numbers::pi);
}

/// BGK relaxation time 4 lambda / (pi Cbar).
template <int Dim>
double relaxation_time(const MacroState<Dim>& macro, const GasProperties& gas) {
  if (!(macro.rho > 0.0) || !(macro.T > 0.0)) {
    throw UnphysicalState("relaxation time needs rho > 0 and T > 0");
  }
  return 4.0 * mean_free_path(macro.rho, gas) /
         (std::numbers::pi * mean_thermal_speed(macro.T, gas));
}

/// In-plane stress tensor  sum w (v - Uw)(v - Uw)^T g1  about the wall
/// velocity Uw. g2 carries out-of-plane energy only and does not enter.
template <int Dim>
Mat<Dim> stress_tensor(std::span<const double> g1, const VelocityGrid<Dim>& grid,
                       const Vec<Dim>& Uw) {
  if (g1.size() != grid.size()) throw ConfigError("stress: pair/grid size mismatch");
  Mat<Dim> phi{};
  const auto& w = grid.weights();
  const auto& v = grid.nodes();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vec<Dim> c = v[j] - Uw;
    const double wg = w[j] * g1[j];
    for (int a = 0; a < Dim; ++a)
      for (int b = a; b < Dim; ++b) phi[a][b] += wg * c[a] * c[b];
  }
  for (int a = 0; a < Dim; ++a)
    for (int b = 0; b < a; ++b) phi[a][b] = phi[b][a];
  return phi;
}

}  // namespace bgkale
