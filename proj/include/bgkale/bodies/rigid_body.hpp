#pragma once

#include <span>
#include <vector>

#include "bgkale/bodies/motion.hpp"
#include "bgkale/cloud/point_cloud.hpp"
#include "bgkale/cloud/region.hpp"
#include "bgkale/velocity/grid.hpp"
#include "bgkale/velocity/physics.hpp"

namespace bgkale {

/// Rigid body in the gas. A body is either two-way coupled (driven by the
/// gas force and torque), prescribed (translating along `direction` by
/// `law`), or fixed.
template <int Dim>
struct RigidBody {
  BodyShape<Dim> shape{};
  double mass = 1.0;
  double inertia = 1.0;
  Pose<Dim> pose{};
  Vec<Dim> V{};
  double omega = 0.0;

  bool two_way = false;
  bool rotates = true;
  MotionLaw law;
  Vec<Dim> direction{};
  Vec<Dim> center0{};

  /// Wall temperature; face_T overrides it per sample tag when non-empty.
  double wall_T = 1.0;
  std::vector<double> face_T;

  double temperature(int tag) const {
    if (tag >= 0 && static_cast<std::size_t>(tag) < face_T.size()) return face_T[tag];
    return wall_T;
  }

  /// Velocity of the material point at world position x.
  Vec<Dim> surface_velocity(const Vec<Dim>& x) const {
    if constexpr (Dim == 1) {
      return V;
    } else {
      const Vec<2> r = x - pose.center;
      return V + omega * Vec<2>{-r[1], r[0]};
    }
  }

  SolidPlacement<Dim> placement() const { return {shape, pose}; }
};

template <int Dim>
struct ForceTorque {
  Vec<Dim> F{};
  double T = 0.0;
};

/// Gas force and torque on body `b`:
///   F = sum_s (-phi n_s) dA_s,  T = sum_s (x_s - X_c) x (-phi n_s) dA_s
/// with phi the stress tensor about the local surface velocity and n_s the
/// outward body normal (the gas-side normal of the sample).
template <int Dim>
ForceTorque<Dim> body_force_torque(const RigidBody<Dim>& body, int b,
                                   const PointCloud<Dim>& cloud,
                                   const VelocityGrid<Dim>& grid) {
  ForceTorque<Dim> out;
  const std::size_t nv = grid.size();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.kind(i) != PointKind::BodyBoundary || cloud.body(i) != b) continue;
    const auto row = cloud.row(i);
    const Vec<Dim>& x = cloud.position(i);
    const Mat<Dim> phi =
        stress_tensor<Dim>(row.subspan(0, nv), grid, body.surface_velocity(x));
    const Vec<Dim>& n = cloud.normal(i);
    Vec<Dim> traction{};
    for (int a = 0; a < Dim; ++a)
      for (int c = 0; c < Dim; ++c) traction[a] -= phi[a][c] * n[c];
    traction = cloud.area(i) * traction;
    out.F += traction;
    if constexpr (Dim == 2) out.T += cross(x - body.pose.center, traction);
  }
  return out;
}

/// Explicit Euler update of a two-way body:
///   V += dt F / M, omega += dt T / I, X_c += dt V_old, angle += dt omega_old.
/// The planar gyroscopic term omega x (I omega) vanishes identically.
template <int Dim>
void integrate_body(RigidBody<Dim>& body, const ForceTorque<Dim>& ft, double dt) {
  const Vec<Dim> V0 = body.V;
  const double w0 = body.omega;
  body.V += (dt / body.mass) * ft.F;
  if (Dim == 2 && body.rotates) body.omega += dt * ft.T / body.inertia;
  body.pose.center += dt * V0;
  body.pose.angle += dt * w0;
}

/// Places the body's boundary points in the cloud at its current pose.
template <int Dim>
void place_body_samples(PointCloud<Dim>& cloud, const RigidBody<Dim>& body, int b,
                        const std::vector<BoundarySample<Dim>>& samples) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (cloud.kind(i) != PointKind::BodyBoundary || cloud.body(i) != b) continue;
    const auto& s = samples[cloud.sample(i)];
    cloud.set_position(i, body.pose.to_world(s.x));
    cloud.set_normal(i, body.pose.rotate_vector(s.normal));
  }
}

}  // namespace bgkale
