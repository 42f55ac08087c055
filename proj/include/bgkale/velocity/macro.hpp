#pragma once

#include "bgkale/core/vec.hpp"

namespace bgkale {

/// Macroscopic state at a point: mass density, mean velocity, temperature.
template <int Dim>
struct MacroState {
  double rho = 0.0;
  Vec<Dim> U{};
  double T = 0.0;

  double pressure(double R) const { return rho * R * T; }
  /// e = (3/2) R T, three translational degrees of freedom.
  double internal_energy(double R) const { return 1.5 * R * T; }
  double total_energy(double R) const {
    return rho * (internal_energy(R) + 0.5 * norm2(U));
  }
};

/// Gas constants. R is the gas constant per unit mass, d the hard-sphere
/// molecular diameter.
struct GasProperties {
  double R = 1.0;
  double d = 3.68e-10;
  double kB = 1.380649e-23;
};

}  // namespace bgkale
