#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "bgkale/cloud/mls.hpp"
#include "bgkale/scenario/config.hpp"
#include "bgkale/scenario/output.hpp"

namespace bgkale {

/// A module error raised inside the time loop, tagged with the step and
/// the id of the offending point (when known).
class RunAborted : public Error {
 public:
  RunAborted(const std::string& what, std::size_t step, std::optional<std::uint64_t> point)
      : Error(what), step_(step), point_(point) {}
  std::size_t step() const { return step_; }
  std::optional<std::uint64_t> point() const { return point_; }

 private:
  std::size_t step_;
  std::optional<std::uint64_t> point_;
};

struct RunOptions {
  std::optional<std::size_t> snapshot_every;
  std::optional<std::string> scheme;
  /// Stops after this many steps (smoke runs).
  std::optional<std::size_t> max_steps;
  /// Keep only the final snapshot.
  bool final_only = false;
  std::function<void(std::size_t, double)> progress;
};

template <int Dim>
struct RunReport {
  std::string name;
  double dx = 0.0;
  double h = 0.0;
  double alpha = 6.0;
  double dt = 0.0;
  std::size_t steps = 0;
  bool truncated = false;
  std::size_t max_points = 0;
  std::vector<Snapshot<Dim>> snapshots;
  std::vector<std::vector<TrajectoryRow<Dim>>> trajectories;
  double wall_seconds = 0.0;
  SolverStats stats;
};

template <int Dim>
Snapshot<Dim> take_snapshot(const Solver<Dim>& s) {
  const auto& c = s.cloud();
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return c.id(a) < c.id(b); });
  Snapshot<Dim> snap;
  snap.t = s.time();
  for (std::size_t i : order) {
    snap.id.push_back(c.id(i));
    snap.x.push_back(c.position(i));
    snap.macro.push_back(s.macro()[i]);
  }
  return snap;
}

template <int Dim>
TrajectoryRow<Dim> trajectory_row(const RigidBody<Dim>& b, double t) {
  return {t, b.pose.center, b.V, b.omega};
}

template <int Dim>
std::optional<std::uint64_t> point_id(const Solver<Dim>& s, std::size_t i) {
  if (i < s.cloud().size()) return s.cloud().id(i);
  return std::nullopt;
}

template <int Dim>
std::string abort_message(const std::string& what, std::size_t step, const Solver<Dim>& s,
                          std::size_t i) {
  std::string m = "aborted at step " + std::to_string(step + 1);
  if (const auto id = point_id(s, i)) m += ", point id " + std::to_string(*id);
  return m + ": " + what;
}

/// Runs a scenario to t_final. Snapshots are taken at t = 0, every
/// `snapshot_every` steps and at the final time.
template <int Dim>
RunReport<Dim> run(ScenarioConfig cfg, const RunOptions& opt = {}) {
  if (opt.scheme) set_scheme(cfg, *opt.scheme);
  const auto start = std::chrono::steady_clock::now();
  Problem<Dim> problem = build_problem<Dim>(cfg);
  RunReport<Dim> rep;
  rep.name = cfg.name;
  rep.dx = problem.dx;
  rep.h = problem.h;
  rep.alpha = problem.alpha;
  rep.dt = time_step(cfg, problem);
  Solver<Dim> solver(std::move(problem), build_profile<Dim>(cfg));
  rep.max_points = solver.cloud().size();
  const std::size_t every = opt.snapshot_every.value_or(cfg.snapshot_every);
  const auto nsteps =
      static_cast<std::size_t>(std::max(0.0, std::ceil(cfg.t_final / rep.dt - 1e-9)));
  rep.trajectories.resize(solver.bodies().size());
  auto record_bodies = [&] {
    for (std::size_t b = 0; b < solver.bodies().size(); ++b)
      rep.trajectories[b].push_back(trajectory_row(solver.bodies()[b], solver.time()));
  };
  if (!opt.final_only || nsteps == 0) rep.snapshots.push_back(take_snapshot(solver));
  record_bodies();
  std::size_t step = 0;
  try {
    for (; step < nsteps; ++step) {
      if (opt.max_steps && step >= *opt.max_steps) {
        rep.truncated = true;
        break;
      }
      const double dt = std::min(rep.dt, cfg.t_final - solver.time());
      if (!(dt > 0.0)) break;
      solver.advance(dt);
      rep.max_points = std::max(rep.max_points, solver.cloud().size());
      record_bodies();
      const bool last = step + 1 == nsteps;
      if (!last && !opt.final_only && every > 0 && (step + 1) % every == 0)
        rep.snapshots.push_back(take_snapshot(solver));
      if (opt.progress) opt.progress(step + 1, solver.time());
    }
  } catch (const UnphysicalState& e) {
    throw RunAborted(abort_message(e.what(), step, solver, e.point()), step + 1,
                     point_id(solver, e.point()));
  } catch (const DegenerateStencil& e) {
    throw RunAborted(abort_message(e.what(), step, solver, e.point()), step + 1,
                     point_id(solver, e.point()));
  } catch (const Error& e) {
    throw RunAborted(abort_message(e.what(), step, solver, UnphysicalState::npos), step + 1,
                     std::nullopt);
  }
  rep.steps = step;
  if (nsteps > 0) rep.snapshots.push_back(take_snapshot(solver));
  rep.stats = solver.stats();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Uniform probe points between `from` and `to` (endpoints included).
template <int Dim>
std::vector<Vec<Dim>> probe_points(const ProbeSpec& spec, const Snapshot<Dim>& snap) {
  if (spec.count < 2) throw ConfigError("probe needs at least two points");
  Vec<Dim> a{};
  Vec<Dim> b{};
  if (spec.from && spec.to) {
    if (spec.from->size() != Dim || spec.to->size() != Dim)
      throw ConfigError("probe end points have the wrong dimension");
    for (int d = 0; d < Dim; ++d) {
      a[d] = (*spec.from)[d];
      b[d] = (*spec.to)[d];
    }
  } else {
    double lo = snap.x.front()[0];
    double hi = lo;
    for (const auto& x : snap.x) {
      lo = std::min(lo, x[0]);
      hi = std::max(hi, x[0]);
    }
    a[0] = lo;
    b[0] = hi;
  }
  std::vector<Vec<Dim>> out(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(spec.count - 1);
    for (int d = 0; d < Dim; ++d) out[k][d] = a[d] + s * (b[d] - a[d]);
  }
  return out;
}

/// MLS interpolation of (rho, U, T) of a snapshot at the probe points.
template <int Dim>
Snapshot<Dim> sample_probe(const Snapshot<Dim>& snap, const std::vector<Vec<Dim>>& probes,
                           double h, double dx, double alpha) {
  PointCloud<Dim> cloud(h, dx, alpha, Dim + 2);
  for (std::size_t i = 0; i < snap.size(); ++i) {
    const std::size_t k = cloud.add_point(snap.x[i], PointKind::Interior);
    auto row = cloud.row(k);
    row[0] = snap.macro[i].rho;
    for (int d = 0; d < Dim; ++d) row[1 + d] = snap.macro[i].U[d];
    row[Dim + 1] = snap.macro[i].T;
  }
  cloud.rebuild_index();
  Snapshot<Dim> out;
  out.t = snap.t;
  const std::size_t width = Dim + 2;
  std::vector<double> vals(width);
  for (std::size_t p = 0; p < probes.size(); ++p) {
    // Probes inside a solid (or off the cloud) have no support: NaN.
    std::fill(vals.begin(), vals.end(), std::numeric_limits<double>::quiet_NaN());
    MlsWeights w;
    try {
      w = mls_weights(cloud, probes[p], 1);
      std::fill(vals.begin(), vals.end(), 0.0);
    } catch (const InsufficientNeighbors&) {
    }
    for (std::size_t k = 0; k < w.ids.size(); ++k) {
      const auto row = cloud.row(w.ids[k]);
      for (std::size_t c = 0; c < width; ++c) vals[c] += w.coef[k] * row[c];
    }
    MacroState<Dim> m;
    m.rho = vals[0];
    for (int d = 0; d < Dim; ++d) m.U[d] = vals[1 + d];
    m.T = vals[Dim + 1];
    out.id.push_back(p);
    out.x.push_back(probes[p]);
    out.macro.push_back(m);
  }
  return out;
}

template <int Dim>
Snapshot<Dim> sample_probe(const RunReport<Dim>& rep, const ProbeSpec& spec) {
  const auto& snap = rep.snapshots.back();
  return sample_probe(snap, probe_points(spec, snap), rep.h, rep.dx, rep.alpha);
}

}  // namespace bgkale
