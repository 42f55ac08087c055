#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <string>

#include "bgkale/scenario/profiles.hpp"
#include "bgkale/solver/solver.hpp"
#include "json.hpp"

namespace bgkale {

/// Probe line for MLS sampling. In 1D it spans the domain by default, in 2D
/// it defaults to the line y = 0 across the bounding box.
struct ProbeSpec {
  std::size_t count = 100;
  std::optional<std::vector<double>> from;
  std::optional<std::vector<double>> to;
};

/// Scenario description. The JSON tree stays the source of truth; the
/// scalar fields are cached for the run loop.
struct ScenarioConfig {
  nlohmann::json tree;
  std::string name;
  int dim = 1;
  double t_final = 0.0;
  std::optional<double> dt;
  std::size_t snapshot_every = 0;
  ProbeSpec probe;
};

inline ScenarioConfig parse_config(const nlohmann::json& j) {
  ScenarioConfig c;
  c.tree = j;
  c.name = j.value("name", std::string("scenario"));
  c.dim = j.value("dim", 1);
  if (c.dim != 1 && c.dim != 2) throw ConfigError("dim must be 1 or 2");
  if (!j.contains("t_final")) throw ConfigError("missing t_final");
  c.t_final = j.at("t_final").get<double>();
  if (c.t_final < 0.0) throw ConfigError("t_final must be nonnegative");
  if (j.contains("dt")) {
    c.dt = j.at("dt").get<double>();
    if (!(*c.dt > 0.0)) throw ConfigError("dt must be positive");
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    c.snapshot_every = o.value("snapshot_every", std::size_t{0});
    if (o.contains("probe")) {
      const auto& p = o.at("probe");
      c.probe.count = p.value("count", std::size_t{100});
      if (p.contains("from")) c.probe.from = p.at("from").get<std::vector<double>>();
      if (p.contains("to")) c.probe.to = p.at("to").get<std::vector<double>>();
    }
  }
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
  return parse_config(j);
}

/// Replaces the cloud resolution: Nx in 1D, h in 2D.
inline void set_resolution(ScenarioConfig& c, double value) {
  auto& cloud = c.tree["cloud"];
  cloud.erase("dx");
  cloud.erase("h");
  cloud.erase("Nx");
  if (c.dim == 1) {
    cloud["Nx"] = static_cast<int>(std::lround(value));
  } else {
    cloud["h"] = value;
  }
}

inline void set_scheme(ScenarioConfig& c, const std::string& scheme) {
  parse_scheme(scheme);
  c.tree["scheme"]["name"] = scheme;
}

namespace detail {

inline MotionLaw law_from_json(const nlohmann::json& j) {
  if (j.is_null()) return {};
  return MotionLaw(j.value("id", std::string("none")), j.value("amplitude", 0.0),
                   j.value("frequency", 1.0));
}

template <int Dim>
MacroState<Dim> state_from_json(const nlohmann::json& j, const MacroState<Dim>& fallback) {
  MacroState<Dim> m = fallback;
  m.rho = j.value("rho", m.rho);
  m.T = j.value("T", m.T);
  if (j.contains("U")) m.U = vec_from_json<Dim>(j.at("U"));
  return m;
}

template <int Dim>
BoundaryCondition<Dim> bc_from_json(const nlohmann::json& j, const MacroState<Dim>& gas) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "far_field" || type == "inflow") return FarField<Dim>{state_from_json<Dim>(j, gas)};
  if (type != "diffuse") throw ConfigError("unknown boundary type '" + type + "'");
  DiffuseWall<Dim> w;
  w.T = j.value("T", gas.T);
  w.U = vec_from_json<Dim>(j.value("U", nlohmann::json()));
  w.profile = j.value("profile", std::string("uniform"));
  if (w.profile != "uniform" && w.profile != "quartic")
    throw ConfigError("unknown wall profile '" + w.profile + "'");
  w.axis = j.value("axis", 0);
  w.lo = j.value("lo", 0.0);
  w.hi = j.value("hi", 1.0);
  w.law = law_from_json(j.value("law", nlohmann::json()));
  w.direction = vec_from_json<Dim>(j.value("direction", nlohmann::json()));
  return w;
}

template <int Dim>
Domain<Dim> domain_from_json(const nlohmann::json& j) {
  if constexpr (Dim == 1) {
    const auto iv = j.at("interval").get<std::vector<double>>();
    if (iv.size() != 2) throw ConfigError("interval needs two values");
    return Domain<1>(iv[0], iv[1]);
  } else {
    if (j.contains("rectangle")) {
      const auto& r = j.at("rectangle");
      const auto lo = vec_from_json<2>(r.at("lo"));
      const auto hi = vec_from_json<2>(r.at("hi"));
      const auto t = j.value("tags", std::vector<int>{0, 1, 2, 3});
      if (t.size() != 4) throw ConfigError("rectangle needs four edge tags");
      return Domain<2>::rectangle(lo, hi, t[0], t[1], t[2], t[3]);
    }
    std::vector<Vec<2>> v;
    for (const auto& p : j.at("polygon")) v.push_back(vec_from_json<2>(p));
    return Domain<2>(v, j.at("tags").get<std::vector<int>>());
  }
}

template <int Dim>
BodyShape<Dim> shape_from_json(const nlohmann::json& j) {
  const std::string s = j.at("shape").get<std::string>();
  if constexpr (Dim == 1) {
    if (s != "plate") throw ConfigError("1D bodies must be plates");
    return Plate{j.at("half_width").get<double>(), j.value("area", 1.0)};
  } else {
    if (s == "circle") return Circle{j.at("radius").get<double>()};
    if (s == "polygon") {
      std::vector<Vec<2>> v;
      for (const auto& p : j.at("vertices")) v.push_back(vec_from_json<2>(p));
      return PolygonShape(v);
    }
    throw ConfigError("unknown body shape '" + s + "'");
  }
}

template <int Dim>
RigidBody<Dim> body_from_json(const nlohmann::json& j, const MacroState<Dim>& gas) {
  RigidBody<Dim> b;
  b.shape = shape_from_json<Dim>(j);
  b.pose.center = vec_from_json<Dim>(j.at("center"));
  b.pose.angle = j.value("angle", 0.0);
  if (j.contains("mass")) {
    b.mass = j.at("mass").get<double>();
  } else if (j.contains("density_ratio")) {
    b.mass = j.at("density_ratio").get<double>() * gas.rho * shape_volume(b.shape);
  } else if (j.value("two_way", false)) {
    throw ConfigError("two-way body needs mass or density_ratio");
  }
  if (!(b.mass > 0.0)) throw ConfigError("body mass must be positive");
  b.inertia = b.mass * shape_inertia_per_mass(b.shape);
  b.two_way = j.value("two_way", false);
  b.rotates = j.value("rotates", true);
  b.law = law_from_json(j.value("law", nlohmann::json()));
  if (b.two_way && b.law.moving()) throw ConfigError("a body is either prescribed or two-way");
  b.direction = vec_from_json<Dim>(j.value("direction", nlohmann::json()));
  b.wall_T = j.value("wall_T", gas.T);
  b.face_T = j.value("face_T", std::vector<double>{});
  if constexpr (Dim == 2) {
    if (b.two_way && b.rotates && !(b.inertia > 0.0))
      throw ConfigError("rotating body needs positive inertia");
  }
  return b;
}

/// Reference gas state: the "gas" block of the initial conditions.
template <int Dim>
MacroState<Dim> reference_state(const nlohmann::json& tree) {
  MacroState<Dim> m{1.0, {}, 1.0};
  if (tree.contains("initial")) m = state_from_json<Dim>(tree.at("initial"), m);
  return m;
}

}  // namespace detail

/// (dx, h) from the cloud block: dx wins over h (dx = beta h), h over Nx
/// (1D only, dx = L / (Nx - 1)).
template <int Dim>
std::pair<double, double> cloud_spacing(const nlohmann::json& cloud, const Domain<Dim>& domain) {
  const double beta = cloud.value("beta", 0.35);
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("cloud beta must lie in (0, 1)");
  double dx = 0.0;
  if (cloud.contains("dx")) {
    dx = cloud.at("dx").get<double>();
  } else if (cloud.contains("h")) {
    return {beta * cloud.at("h").get<double>(), cloud.at("h").get<double>()};
  } else if (cloud.contains("Nx")) {
    if constexpr (Dim != 1) {
      throw ConfigError("Nx is a 1D resolution; use dx or h");
    } else {
      const int nx = cloud.at("Nx").get<int>();
      if (nx < 2) throw ConfigError("Nx must be at least 2");
      dx = (domain.hi() - domain.lo()) / (nx - 1);
    }
  } else {
    throw ConfigError("cloud needs dx, h or Nx");
  }
  if (!(dx > 0.0)) throw ConfigError("dx must be positive");
  return {dx, dx / beta};
}

template <int Dim>
Problem<Dim> build_problem(const ScenarioConfig& c) {
  if (c.dim != Dim) throw ConfigError("scenario dimension mismatch");
  const auto& j = c.tree;
  Problem<Dim> p;
  const auto gas = j.value("gas", nlohmann::json::object());
  p.R = gas.value("R", 1.0);
  if (!(p.R > 0.0)) throw ConfigError("gas constant must be positive");
  const auto& vel = j.at("velocity");
  p.grid = VelocityGrid<Dim>(vel.at("vmax").get<double>(), vel.at("Nv").get<int>());
  const auto tau = j.at("tau");
  const std::string mode = tau.value("mode", std::string("fixed"));
  p.tau.gas.R = p.R;
  p.tau.gas.d = gas.value("d", p.tau.gas.d);
  if (mode == "variable") {
    p.tau.variable = true;
  } else if (mode == "fixed") {
    p.tau.tau = tau.at("value").get<double>();
    if (!(p.tau.tau > 0.0)) throw ConfigError("tau must be positive");
  } else {
    throw ConfigError("unknown tau mode '" + mode + "'");
  }
  p.domain = detail::domain_from_json<Dim>(j.at("domain"));
  const MacroState<Dim> ref = detail::reference_state<Dim>(j);
  for (const auto& b : j.at("boundaries")) p.domain_bc.push_back(detail::bc_from_json<Dim>(b, ref));
  if (j.contains("bodies"))
    for (const auto& b : j.at("bodies")) p.bodies.push_back(detail::body_from_json<Dim>(b, ref));
  const auto& cloud = j.at("cloud");
  std::tie(p.dx, p.h) = cloud_spacing<Dim>(cloud, p.domain);
  if (!(p.dx < p.h)) throw ConfigError("dx must be smaller than h");
  p.alpha = cloud.value("alpha", 6.0);
  p.management.theta_merge = cloud.value("theta_merge", p.management.theta_merge);
  p.management.hole_factor = cloud.value("hole_factor", p.management.hole_factor);
  p.management.m_min = cloud.value("m_min", p.management.m_min);
  const auto sch = j.value("scheme", nlohmann::json::object());
  p.scheme.scheme = parse_scheme(sch.value("name", std::string("first_order")));
  p.scheme.cfl = sch.value("cfl", 0.5);
  if (sch.contains("spatial")) {
    const std::string s = sch.at("spatial").get<std::string>();
    if (s == "first") {
      p.scheme.spatial = SpatialOrder::First;
    } else if (s == "weno") {
      p.scheme.spatial = SpatialOrder::Second;
    } else {
      throw ConfigError("unknown spatial order '" + s + "'");
    }
  }
  p.weno_eps = sch.value("weno_eps", p.weno_eps);
  p.speed_limit = j.value("speed_limit", p.speed_limit);
  const std::string eq = tau.value("equilibrium", std::string("matched"));
  if (eq == "recovered") {
    p.equilibrium = Equilibrium::Recovered;
  } else if (eq != "matched") {
    throw ConfigError("unknown equilibrium '" + eq + "'");
  }
  return p;
}

template <int Dim>
typename Solver<Dim>::Profile build_profile(const ScenarioConfig& c) {
  return make_profile<Dim>(c.tree.at("initial"));
}

/// Fixed dt when given, otherwise C dx / vmax.
template <int Dim>
double time_step(const ScenarioConfig& c, const Problem<Dim>& p) {
  if (c.dt) return *c.dt;
  return cfl_dt(p.dx, p.grid.vmax(), p.scheme.cfl);
}

}  // namespace bgkale
