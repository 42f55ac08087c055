#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bgkale/bodies/boundary.hpp"
#include "bgkale/bodies/rigid_body.hpp"
#include "bgkale/cloud/initialize.hpp"
#include "bgkale/cloud/manage.hpp"
#include "bgkale/solver/relaxation.hpp"
#include "bgkale/solver/transport.hpp"

namespace bgkale {

enum class Scheme { FirstOrder, Ars221, Ars222 };

inline Scheme parse_scheme(const std::string& s) {
  if (s == "first_order" || s == "first-order") return Scheme::FirstOrder;
  if (s == "ars221" || s == "ARS(2,2,1)") return Scheme::Ars221;
  if (s == "ars222" || s == "ARS(2,2,2)") return Scheme::Ars222;
  throw ConfigError("unknown scheme '" + s + "'");
}

inline std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::FirstOrder:
      return "first_order";
    case Scheme::Ars221:
      return "ars221";
    default:
      return "ars222";
  }
}

/// beta of ARS(2,2,2).
inline const double kArsBeta = 1.0 - 1.0 / std::sqrt(2.0);

struct SchemeConfig {
  Scheme scheme = Scheme::FirstOrder;
  /// Spatial reconstruction; by default first-order upwinding for the first
  /// order scheme and the WENO blend for the ARS schemes.
  std::optional<SpatialOrder> spatial;
  double cfl = 0.5;

  SpatialOrder spatial_order() const {
    if (spatial) return *spatial;
    return scheme == Scheme::FirstOrder ? SpatialOrder::First : SpatialOrder::Second;
  }
};

/// Static description of a run.
template <int Dim>
struct Problem {
  VelocityGrid<Dim> grid{1.0, 1};
  double R = 1.0;
  TauModel tau;
  Domain<Dim> domain;
  /// Boundary condition per domain boundary tag.
  std::vector<BoundaryCondition<Dim>> domain_bc;
  std::vector<RigidBody<Dim>> bodies;
  double dx = 0.1;
  double h = 0.25;
  double alpha = 6.0;
  ManagementParams<Dim> management;
  SchemeConfig scheme;
  double weno_eps = 1e-6;
  Equilibrium equilibrium = Equilibrium::Matched;
  /// Abort when an interior |U| exceeds speed_limit * vmax.
  double speed_limit = 2.0;
};

struct SolverStats {
  std::size_t steps = 0;
  std::size_t stencil_fallbacks = 0;
  ChangeReport management;
};

/// Meshfree ALE integrator of the reduced BGK system on a moving cloud.
///
/// Values per point are stored as [g1 | g2] over the velocity nodes. Domain
/// boundary points stay at their samples (or follow the wall's motion law),
/// body points follow their body, interior points move with the gas.
template <int Dim>
class Solver {
 public:
  using Profile = std::function<MacroState<Dim>(const Vec<Dim>&)>;

  Solver(Problem<Dim> problem, const Profile& initial)
      : p_(std::move(problem)), domain_(p_.domain), bodies_(p_.bodies) {
    if (!(p_.dx < p_.h)) throw ConfigError("point spacing must be smaller than h");
    domain_samples_ = p_.domain.sample(p_.dx);
    for (const auto& s : domain_samples_) {
      if (s.tag < 0 || static_cast<std::size_t>(s.tag) >= p_.domain_bc.size())
        throw ConfigError("no boundary condition for domain tag " + std::to_string(s.tag));
    }
    for (const auto& bc : p_.domain_bc) {
      if (const auto* w = std::get_if<DiffuseWall<Dim>>(&bc); w && w->law.moving() && Dim != 1)
        throw ConfigError("moving domain walls are supported in 1D only");
    }
    for (auto& b : bodies_) {
      b.center0 = b.pose.center;
      body_samples_.push_back(shape_samples(b.shape, p_.dx));
    }
    cloud_ = initialize_cloud(region(), p_.dx, p_.h, p_.alpha, 2 * p_.grid.size());
    const std::size_t nv = p_.grid.size();
    for (std::size_t i = 0; i < cloud_.size(); ++i) {
      auto row = cloud_.row(i);
      fill_reduced_maxwellians(initial(cloud_.position(i)), p_.grid, p_.R, row.subspan(0, nv),
                               row.subspan(nv, nv));
    }
    place_boundaries(0.0);
    cloud_.rebuild_index();
    apply_boundaries(0.0);
    refresh_macros();
  }

  const Problem<Dim>& problem() const { return p_; }
  const PointCloud<Dim>& cloud() const { return cloud_; }
  PointCloud<Dim>& cloud() { return cloud_; }
  const std::vector<MacroState<Dim>>& macro() const { return macro_; }
  const std::vector<RigidBody<Dim>>& bodies() const { return bodies_; }
  const Domain<Dim>& domain() const { return domain_; }
  const SolverStats& stats() const { return stats_; }
  double time() const { return t_; }

  GasRegion<Dim> region() const {
    GasRegion<Dim> r{domain_, {}};
    for (const auto& b : bodies_) r.solids.push_back(b.placement());
    return r;
  }

  double cfl_number(double dt) const { return dt * p_.grid.vmax() / p_.dx; }

  /// One time step of the configured scheme.
  void advance(double dt) {
    if (!(dt > 0.0)) throw ConfigError("time step must be positive");
    if (cfl_number(dt) > 1.0)
      throw ConfigError("CFL violation: dt vmax / dx = " + std::to_string(cfl_number(dt)));
    switch (p_.scheme.scheme) {
      case Scheme::FirstOrder:
        run_tableau(dt, {}, {1.0}, {}, 1.0);
        break;
      case Scheme::Ars221:
        run_tableau(dt, {0.5}, {0.0, 1.0}, {0.5}, 1.0);
        break;
      case Scheme::Ars222:
        run_tableau(dt, {kArsBeta}, {kArsBeta - 1.0, 2.0 - kArsBeta}, {kArsBeta}, kArsBeta);
        break;
    }
    ++stats_.steps;
  }

  /// Recomputes the cached moments of every point.
  void refresh_macros() {
    const std::size_t nv = p_.grid.size();
    macro_.resize(cloud_.size());
    parallel_for(cloud_.size(), [&](std::size_t i) {
      const auto row = cloud_.row(i);
      macro_[i] = compute_moments<Dim>(row.subspan(0, nv), row.subspan(nv, nv), p_.grid, p_.R);
    });
  }

  /// Applies the boundary condition of every boundary point at time t.
  void apply_boundaries(double t) {
    const std::size_t nv = p_.grid.size();
    for (std::size_t i = 0; i < cloud_.size(); ++i) {
      const PointKind kind = cloud_.kind(i);
      if (kind == PointKind::Interior) continue;
      auto row = cloud_.row(i);
      auto g1 = row.subspan(0, nv);
      auto g2 = row.subspan(nv, nv);
      if (kind == PointKind::DomainBoundary) {
        apply_boundary<Dim>(g1, g2, cloud_.position(i), cloud_.normal(i),
                            p_.domain_bc[cloud_.tag(i)], p_.grid, p_.R, t);
      } else {
        const auto& b = bodies_[cloud_.body(i)];
        apply_diffuse<Dim>(g1, g2, cloud_.normal(i), b.surface_velocity(cloud_.position(i)),
                           b.temperature(cloud_.tag(i)), p_.grid, p_.R);
      }
    }
  }

  /// Transport right-hand side of the current state (index must be current).
  std::vector<double> transport(double t) {
    std::vector<double> rhs;
    compute_frames(t);
    TransportInput<Dim> in{&cloud_, &p_.grid, frame_, wall_, rule_, p_.scheme.spatial_order(),
                           p_.dx, p_.weno_eps};
    stats_.stencil_fallbacks += transport_rhs(in, rhs);
    return rhs;
  }

 private:
  struct BodyState {
    Vec<Dim> X{};
    double angle = 0.0;
    Vec<Dim> V{};
    double omega = 0.0;
  };

  /// Frame velocity, wall velocity and incoming rule of every point.
  void compute_frames(double t) {
    const std::size_t n = cloud_.size();
    frame_.assign(n, Vec<Dim>{});
    wall_.assign(n, Vec<Dim>{});
    rule_.assign(n, IncomingRule::None);
    for (std::size_t i = 0; i < n; ++i) {
      switch (cloud_.kind(i)) {
        case PointKind::Interior:
          frame_[i] = macro_[i].U;
          break;
        case PointKind::DomainBoundary: {
          const auto& bc = p_.domain_bc[cloud_.tag(i)];
          if (const auto* w = std::get_if<DiffuseWall<Dim>>(&bc)) {
            frame_[i] = w->motion_velocity(t);
            wall_[i] = w->wall_velocity(cloud_.position(i), t);
            rule_[i] = IncomingRule::Strict;
          } else {
            rule_[i] = IncomingRule::Inclusive;
          }
          break;
        }
        case PointKind::BodyBoundary: {
          const auto& b = bodies_[cloud_.body(i)];
          frame_[i] = b.surface_velocity(cloud_.position(i));
          wall_[i] = frame_[i];
          rule_[i] = IncomingRule::Strict;
          break;
        }
      }
    }
  }

  std::vector<ForceTorque<Dim>> body_forces() const {
    std::vector<ForceTorque<Dim>> f(bodies_.size());
    for (std::size_t b = 0; b < bodies_.size(); ++b)
      if (bodies_[b].two_way)
        f[b] = body_force_torque(bodies_[b], static_cast<int>(b), cloud_, p_.grid);
    return f;
  }

  /// Moves domain walls with their motion law and body points with their
  /// bodies; prescribed bodies are set from their law at time t.
  void place_boundaries(double t) {
    for (auto& b : bodies_) {
      if (!b.two_way && b.law.moving()) {
        b.pose.center = b.center0 + b.law.displacement(t) * b.direction;
        b.V = b.law.velocity(t) * b.direction;
      }
    }
    for (std::size_t i = 0; i < cloud_.size(); ++i) {
      if (cloud_.kind(i) != PointKind::DomainBoundary) continue;
      const auto& s = domain_samples_[cloud_.sample(i)];
      const auto* w = std::get_if<DiffuseWall<Dim>>(&p_.domain_bc[cloud_.tag(i)]);
      if (w && w->law.moving()) {
        cloud_.set_position(i, s.x + w->law.displacement(t) * w->direction);
        if constexpr (Dim == 1) {
          if (s.tag == 0) domain_.set_lo(cloud_.position(i)[0]);
          if (s.tag == 1) domain_.set_hi(cloud_.position(i)[0]);
        }
      }
    }
    for (std::size_t b = 0; b < bodies_.size(); ++b)
      place_body_samples(cloud_, bodies_[b], static_cast<int>(b), body_samples_[b]);
  }

  /// Generic IMEX step. The explicit tableau has one optional intermediate
  /// stage at c = a_mid[0] with relaxation weight gamma_mid[0]; the final
  /// stage combines the stage transports with weights b and relaxes with
  /// weight gamma_last. ARS(2,2,2) also carries (1 - beta) times the
  /// intermediate relaxation term into the final stage.
  void run_tableau(double dt, std::vector<double> a_mid, std::vector<double> b,
                   std::vector<double> gamma_mid, double gamma_last) {
    const std::size_t n = cloud_.size();
    const std::vector<double> f0 = cloud_.values();
    std::vector<Vec<Dim>> x0(n);
    for (std::size_t i = 0; i < n; ++i) x0[i] = cloud_.position(i);
    std::vector<BodyState> body0;
    for (const auto& bd : bodies_) body0.push_back({bd.pose.center, bd.pose.angle, bd.V, bd.omega});

    // Stage data: transport, frame velocities, body forces and velocities.
    std::vector<std::vector<double>> rhs;
    std::vector<std::vector<Vec<Dim>>> frames;
    std::vector<std::vector<ForceTorque<Dim>>> forces;
    std::vector<std::vector<BodyState>> bstate;
    auto record_stage = [&](double ts) {
      rhs.push_back(transport(ts));
      frames.push_back(frame_);
      forces.push_back(body_forces());
      std::vector<BodyState> bs;
      for (const auto& bd : bodies_) bs.push_back({bd.pose.center, bd.pose.angle, bd.V, bd.omega});
      bstate.push_back(std::move(bs));
    };
    record_stage(t_);

    std::vector<double> relax_term;  // (f1 - tilde1) / gamma_mid for ARS(2,2,2)
    const bool ars222 = p_.scheme.scheme == Scheme::Ars222;
    const std::size_t nstages = a_mid.size() + 1;
    for (std::size_t s = 0; s < nstages; ++s) {
      const bool last = s + 1 == nstages;
      std::vector<double> w = last ? b : std::vector<double>{a_mid[s]};
      const double c = last ? 1.0 : a_mid[s];
      const double ts = t_ + c * dt;
      // Explicit combination of the recorded stages.
      auto& vals = cloud_.values();
      vals = f0;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0.0) continue;
        const double a = dt * w[k];
        const auto& r = rhs[k];
        for (std::size_t q = 0; q < vals.size(); ++q) vals[q] += a * r[q];
      }
      if (last && ars222 && !relax_term.empty()) {
        const double a = 1.0 - kArsBeta;
        for (std::size_t q = 0; q < vals.size(); ++q) vals[q] += a * relax_term[q];
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (cloud_.kind(i) != PointKind::Interior) continue;
        Vec<Dim> x = x0[i];
        for (std::size_t k = 0; k < w.size(); ++k) x += (dt * w[k]) * frames[k][i];
        cloud_.set_position(i, x);
      }
      for (std::size_t bi = 0; bi < bodies_.size(); ++bi) {
        auto& bd = bodies_[bi];
        if (!bd.two_way) continue;
        BodyState nb = body0[bi];
        for (std::size_t k = 0; k < w.size(); ++k) {
          const double a = dt * w[k];
          nb.X += a * bstate[k][bi].V;
          nb.angle += a * bstate[k][bi].omega;
          nb.V += (a / bd.mass) * forces[k][bi].F;
          if (Dim == 2 && bd.rotates) nb.omega += a * forces[k][bi].T / bd.inertia;
        }
        bd.pose.center = nb.X;
        bd.pose.angle = nb.angle;
        bd.V = nb.V;
        bd.omega = nb.omega;
      }
      place_boundaries(ts);
      apply_boundaries(ts);
      const double gamma = last ? gamma_last : gamma_mid[s];
      std::vector<double> tilde;
      if (ars222 && !last) tilde = vals;
      relax_all(gamma * dt);
      if (ars222 && !last) {
        relax_term.resize(vals.size());
        for (std::size_t q = 0; q < vals.size(); ++q)
          relax_term[q] = (vals[q] - tilde[q]) / gamma;
      }
      if (!last) {
        cloud_.rebuild_index();
        apply_boundaries(ts);
        refresh_macros();
        record_stage(ts);
      }
    }
    t_ += dt;
    const ChangeReport rep = manage_points(cloud_, region(), p_.management);
    stats_.management.append(rep);
    if (!cloud_.index_current()) cloud_.rebuild_index();
    apply_boundaries(t_);
    refresh_macros();
    check_speed();
  }

  void relax_all(double dt) {
    const std::size_t nv = p_.grid.size();
    macro_.resize(cloud_.size());
    parallel_for(cloud_.size(), [&](std::size_t i) {
      auto row = cloud_.row(i);
      macro_[i] = relax_in_place<Dim>(row.subspan(0, nv), row.subspan(nv, nv), dt, p_.tau,
                                      p_.grid, p_.R, i, p_.equilibrium);
    });
  }

  void check_speed() const {
    const double limit = p_.speed_limit * p_.grid.vmax();
    for (std::size_t i = 0; i < cloud_.size(); ++i) {
      if (cloud_.kind(i) == PointKind::Interior && norm(macro_[i].U) > limit)
        throw UnphysicalState("mean velocity exceeds " + std::to_string(p_.speed_limit) +
                                  " vmax at point " + std::to_string(cloud_.id(i)),
                              i);
    }
  }

  Problem<Dim> p_;
  Domain<Dim> domain_;
  std::vector<RigidBody<Dim>> bodies_;
  std::vector<BoundarySample<Dim>> domain_samples_;
  std::vector<std::vector<BoundarySample<Dim>>> body_samples_;
  PointCloud<Dim> cloud_;
  std::vector<MacroState<Dim>> macro_;
  std::vector<Vec<Dim>> frame_;
  std::vector<Vec<Dim>> wall_;
  std::vector<IncomingRule> rule_;
  SolverStats stats_;
  double t_ = 0.0;
};

}  // namespace bgkale
