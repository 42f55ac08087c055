#pragma once

#include <cmath>
#include <span>
#include <string>

#include "bgkale/core/error.hpp"
#include "bgkale/velocity/moments.hpp"
#include "bgkale/velocity/physics.hpp"
#include "bgkale/velocity/reduced.hpp"

namespace bgkale {

/// Relaxation time: a fixed value, or the hard-sphere value of the local
/// state when `variable` is set.
struct TauModel {
  bool variable = false;
  double tau = 1.0;
  GasProperties gas;

  template <int Dim>
  double operator()(const MacroState<Dim>& m) const {
    return variable ? relaxation_time(m, gas) : tau;
  }
};

/// Parameters of the implicit Maxwellian: the moments of the transported
/// pair. Mass, momentum and the energy combination
///   sum w |v-U|^2 g1 + sum w g2 = 3 rho R T
/// are invariants of the relaxation, so no iteration is needed.
template <int Dim>
MacroState<Dim> recover_parameters(std::span<const double> g1, std::span<const double> g2,
                                   const VelocityGrid<Dim>& grid, double R,
                                   std::size_t point = UnphysicalState::npos) {
  const MacroState<Dim> m = compute_moments(g1, g2, grid, R);
  if (!(m.rho > 0.0))
    throw UnphysicalState("transport produced nonpositive density " + std::to_string(m.rho),
                          point);
  if (!(m.T > 0.0))
    throw UnphysicalState("transport produced nonpositive temperature " + std::to_string(m.T),
                          point);
  return m;
}

template <int Dim>
MacroState<Dim> recover_parameters(const ReducedPair& tilde, const VelocityGrid<Dim>& grid,
                                   double R) {
  return recover_parameters(std::span<const double>(tilde.g1),
                            std::span<const double>(tilde.g2), grid, R);
}

/// How the equilibrium of the relaxation step is parameterised.
///   Recovered: G at the recovered (rho, U, T).
///   Matched:   G at parameters corrected so that its discrete moments equal
///              the recovered ones; removes the quadrature drift of repeated
///              relaxation on coarse velocity grids.
enum class Equilibrium { Recovered, Matched };

template <int Dim>
MacroState<Dim> matched_parameters(const MacroState<Dim>& m, const VelocityGrid<Dim>& grid,
                                   double R, ReducedPair& G) {
  // A few fixed-point sweeps; the first one leaves a residual of order
  // eps_quad squared, which still shows in long conservation checks.
  MacroState<Dim> p = m;
  for (int it = 0; it < 4; ++it) {
    fill_reduced_maxwellians(p, grid, R, std::span<double>(G.g1), std::span<double>(G.g2));
    const MacroState<Dim> q =
        compute_moments<Dim>(std::span<const double>(G.g1), std::span<const double>(G.g2), grid, R);
    double res = std::abs(m.rho - q.rho) / m.rho + std::abs(m.T - q.T) / m.T;
    for (int a = 0; a < Dim; ++a) res += std::abs(m.U[a] - q.U[a]) / std::sqrt(R * m.T);
    if (res < 1e-15) break;
    MacroState<Dim> n = p;
    n.rho += m.rho - q.rho;
    n.U += m.U - q.U;
    n.T += m.T - q.T;
    if (!(n.rho > 0.0 && n.T > 0.0)) return it == 0 ? m : p;
    p = n;
  }
  return p;
}

/// g <- (tau g + dt G) / (tau + dt) in place, G built from the recovered
/// parameters of g. Returns those parameters.
template <int Dim>
MacroState<Dim> relax_in_place(std::span<double> g1, std::span<double> g2, double dt,
                               const TauModel& tau_model, const VelocityGrid<Dim>& grid,
                               double R, std::size_t point = UnphysicalState::npos,
                               Equilibrium eq = Equilibrium::Matched) {
  const MacroState<Dim> m = recover_parameters<Dim>(g1, g2, grid, R, point);
  const double tau = tau_model(m);
  thread_local ReducedPair G;
  G.g1.resize(grid.size());
  G.g2.resize(grid.size());
  const MacroState<Dim> p = eq == Equilibrium::Matched ? matched_parameters(m, grid, R, G) : m;
  fill_reduced_maxwellians(p, grid, R, std::span<double>(G.g1), std::span<double>(G.g2));
  const double a = tau / (tau + dt);
  const double b = dt / (tau + dt);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    g1[j] = a * g1[j] + b * G.g1[j];
    g2[j] = a * g2[j] + b * G.g2[j];
  }
  return m;
}

/// Closed-form implicit BGK step (tau tilde + dt G^{n+1}) / (tau + dt).
template <int Dim>
ReducedPair relax_implicit(const ReducedPair& tilde, double dt, double tau,
                           const VelocityGrid<Dim>& grid, double R,
                           Equilibrium eq = Equilibrium::Matched) {
  if (!(tau > 0.0)) throw ConfigError("relaxation time must be positive");
  ReducedPair out = tilde;
  relax_in_place<Dim>(std::span<double>(out.g1), std::span<double>(out.g2), dt,
                      TauModel{false, tau, {}}, grid, R, UnphysicalState::npos, eq);
  return out;
}

/// Time step C dx / vmax.
inline double cfl_dt(double dx, double vmax, double C) { return C * dx / vmax; }

}  // namespace bgkale
