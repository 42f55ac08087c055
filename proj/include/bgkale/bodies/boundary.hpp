#pragma once

#include <span>
#include <string>
#include <variant>

#include "bgkale/bodies/motion.hpp"
#include "bgkale/core/error.hpp"
#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/macro.hpp"
#include "bgkale/velocity/reduced.hpp"

namespace bgkale {

/// Fully accommodating wall. Its velocity at x and t is
///   U * profile(x) + law.velocity(t) * direction,
/// where profile is 1 ("uniform") or (1 - xi^2)^2 with xi mapping
/// [lo, hi] along `axis` onto [-1, 1] ("quartic"). Only the law part moves
/// the boundary points.
template <int Dim>
struct DiffuseWall {
  double T = 1.0;
  Vec<Dim> U{};
  std::string profile = "uniform";
  int axis = 0;
  double lo = 0.0;
  double hi = 1.0;
  MotionLaw law;
  Vec<Dim> direction{};

  double profile_factor(const Vec<Dim>& x) const {
    if (profile != "quartic") return 1.0;
    const double xi = 2.0 * (x[axis] - lo) / (hi - lo) - 1.0;
    const double s = 1.0 - xi * xi;
    return std::abs(xi) < 1.0 ? s * s : 0.0;
  }

  /// Velocity of the boundary points (the law part only).
  Vec<Dim> motion_velocity(double t) const { return law.velocity(t) * direction; }

  Vec<Dim> wall_velocity(const Vec<Dim>& x, double t) const {
    return profile_factor(x) * U + motion_velocity(t);
  }
};

/// Far-field (or prescribed inflow) boundary: incoming nodes take the
/// reduced Maxwellians of `state`.
template <int Dim>
struct FarField {
  MacroState<Dim> state;
};

template <int Dim>
using BoundaryCondition = std::variant<DiffuseWall<Dim>, FarField<Dim>>;

/// Node classification at a boundary point: diffuse walls treat the tangent
/// node as outgoing, far fields replace it.
enum class IncomingRule : unsigned char { None, Strict, Inclusive };

inline bool is_incoming(IncomingRule rule, double c) {
  switch (rule) {
    case IncomingRule::Strict:
      return c > 0.0;
    case IncomingRule::Inclusive:
      return c >= 0.0;
    default:
      return false;
  }
}

/// Diffuse reflection at a boundary point with unit normal n pointing into
/// the gas. Incoming nodes ((v - Uw).n > 0) are replaced by the wall
/// Maxwellians at (sigma, Uw, Tw), sigma balancing the outgoing mass flux.
/// Returns sigma.
template <int Dim>
double apply_diffuse(std::span<double> g1, std::span<double> g2, const Vec<Dim>& n,
                     const Vec<Dim>& Uw, double Tw, const VelocityGrid<Dim>& grid,
                     double R) {
  if (!(Tw > 0.0)) throw ConfigError("wall temperature must be positive");
  thread_local ReducedPair unit;
  unit.g1.resize(grid.size());
  unit.g2.resize(grid.size());
  fill_reduced_maxwellians(MacroState<Dim>{1.0, Uw, Tw}, grid, R, std::span<double>(unit.g1),
                           std::span<double>(unit.g2));
  const auto& w = grid.weights();
  double out_flux = 0.0;
  double in_flux = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double c = dot(grid.node(j) - Uw, n);
    if (c > 0.0) {
      in_flux += w[j] * c * unit.g1[j];
    } else {
      out_flux += w[j] * c * g1[j];
    }
  }
  if (!(in_flux > 0.0))
    throw ConfigError("no incoming velocity nodes at a diffuse wall; increase vmax");
  const double sigma = -out_flux / in_flux;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (dot(grid.node(j) - Uw, n) > 0.0) {
      g1[j] = sigma * unit.g1[j];
      g2[j] = sigma * unit.g2[j];
    }
  }
  return sigma;
}

/// Far-field condition: nodes with (v - Uw).n >= 0 take the far-field
/// reduced Maxwellians.
template <int Dim>
void apply_far_field(std::span<double> g1, std::span<double> g2, const Vec<Dim>& n,
                     const MacroState<Dim>& far, const VelocityGrid<Dim>& grid, double R,
                     const Vec<Dim>& Uw = {}) {
  thread_local ReducedPair G;
  G.g1.resize(grid.size());
  G.g2.resize(grid.size());
  fill_reduced_maxwellians(far, grid, R, std::span<double>(G.g1), std::span<double>(G.g2));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (dot(grid.node(j) - Uw, n) >= 0.0) {
      g1[j] = G.g1[j];
      g2[j] = G.g2[j];
    }
  }
}

/// Applies `bc` to the pair stored at a boundary point at position x with
/// normal n, time t. Body walls pass their surface velocity in Uw_override.
template <int Dim>
void apply_boundary(std::span<double> g1, std::span<double> g2, const Vec<Dim>& x,
                    const Vec<Dim>& n, const BoundaryCondition<Dim>& bc,
                    const VelocityGrid<Dim>& grid, double R, double t) {
  if (const auto* wall = std::get_if<DiffuseWall<Dim>>(&bc)) {
    apply_diffuse(g1, g2, n, wall->wall_velocity(x, t), wall->T, grid, R);
  } else {
    apply_far_field(g1, g2, n, std::get<FarField<Dim>>(bc).state, grid, R);
  }
}

template <int Dim>
ReducedPair apply_boundary(const ReducedPair& pair, const Vec<Dim>& x, const Vec<Dim>& n,
                           const BoundaryCondition<Dim>& bc, const VelocityGrid<Dim>& grid,
                           double R, double t) {
  ReducedPair out = pair;
  apply_boundary(std::span<double>(out.g1), std::span<double>(out.g2), x, n, bc, grid, R, t);
  return out;
}

/// Discrete mass flux sum w (v - Uw).n g1 through a boundary point.
template <int Dim>
double boundary_mass_flux(std::span<const double> g1, const Vec<Dim>& n, const Vec<Dim>& Uw,
                          const VelocityGrid<Dim>& grid) {
  double s = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    s += grid.weight(j) * dot(grid.node(j) - Uw, n) * g1[j];
  return s;
}

}  // namespace bgkale
