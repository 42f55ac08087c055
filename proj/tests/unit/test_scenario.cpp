#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bgkale/bgkale.hpp"

using namespace bgkale;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("bgkale_test_" + name);
  fs::create_directories(d);
  return d;
}

ScenarioConfig small_example1(double t_final) {
  ScenarioConfig c = load_config(std::string(BGKALE_SCENARIO_DIR) + "/example1_smooth_1d.json");
  set_resolution(c, 51);
  c.t_final = t_final;
  return c;
}

// Conserved fluxes of the Euler equations.
std::array<double, 3> flux(const EulerState& s, double g) {
  const double E = s.p / (g - 1.0) + 0.5 * s.rho * s.u * s.u;
  return {s.rho * s.u, s.rho * s.u * s.u + s.p, s.u * (E + s.p)};
}
std::array<double, 3> conserved(const EulerState& s, double g) {
  return {s.rho, s.rho * s.u, s.p / (g - 1.0) + 0.5 * s.rho * s.u * s.u};
}

}  // namespace

TEST(Riemann, EqualStatesStayConstant) {
  const EulerState s{0.4, 0.3, 1.2};
  for (double xi : {-5.0, -0.1, 0.0, 0.7, 9.0}) {
    const auto q = euler_riemann_exact(s, s, 5.0 / 3.0, xi);
    EXPECT_NEAR(q.rho, 0.4, 1e-12);
    EXPECT_NEAR(q.u, 0.3, 1e-12);
    EXPECT_NEAR(q.p, 1.2, 1e-12);
  }
}

TEST(Riemann, SodResiduals) {
  const double R = 208.0, T = 273.0, g = 5.0 / 3.0;
  const EulerState l{1e-3, 0.0, 1e-3 * R * T}, r{1.25e-4, 0.0, 1.25e-4 * R * T};
  const ExactRiemann rp(l, r, g);
  const auto& st = rp.star();
  EXPECT_GT(st.p, r.p);  // right shock
  EXPECT_LT(st.p, l.p);  // left rarefaction

  // Rankine-Hugoniot across the right shock, in the shock frame.
  const double S = rp.right_shock_speed();
  const EulerState post{st.rho_right, st.u, st.p};
  const auto Fa = flux(r, g), Fb = flux(post, g), Ua = conserved(r, g), Ub = conserved(post, g);
  const std::array<double, 3> scale = {r.rho * 400.0, r.p * 10.0, r.p * 4000.0};
  for (int k = 0; k < 3; ++k)
    EXPECT_LE(std::abs((Fb[k] - Fa[k]) - S * (Ub[k] - Ua[k])), 1e-10 * scale[k]) << k;

  // Riemann invariant and isentrope across the left fan.
  const double cl = std::sqrt(g * l.p / l.rho);
  const double J = l.u + 2.0 * cl / (g - 1.0);
  const double K = l.p / std::pow(l.rho, g);
  const double cs = std::sqrt(g * st.p / st.rho_left);
  EXPECT_LE(std::abs(st.u + 2.0 * cs / (g - 1.0) - J), 1e-10 * J);
  EXPECT_LE(std::abs(st.p / std::pow(st.rho_left, g) - K), 1e-10 * K);
  for (double f : {0.1, 0.5, 0.9}) {
    const double xi = -cl + f * (st.u - cs + cl);
    const auto q = rp.sample(xi);
    const double c = std::sqrt(g * q.p / q.rho);
    EXPECT_LE(std::abs(q.u + 2.0 * c / (g - 1.0) - J), 1e-10 * J);
    EXPECT_LE(std::abs(q.p / std::pow(q.rho, g) - K), 1e-10 * K);
    EXPECT_NEAR(q.u - c, xi, 1e-9 * cl);  // characteristic through the origin
  }
  // Pressure and velocity continuous across the contact.
  const auto a = rp.sample(rp.contact_speed() - 1e-9), b = rp.sample(rp.contact_speed() + 1e-9);
  EXPECT_NEAR(a.p, b.p, 1e-12 * st.p);
  EXPECT_NEAR(a.u, b.u, 1e-9);
}

TEST(Riemann, FarFieldAndVacuum) {
  const EulerState l{1.0, 0.0, 1.0}, r{0.125, 0.0, 0.1};
  const auto q = euler_riemann_exact(l, r, 1.4, -100.0);
  EXPECT_EQ(q.rho, 1.0);
  EXPECT_EQ(q.p, 1.0);
  const auto s = euler_riemann_exact(l, r, 1.4, 100.0);
  EXPECT_EQ(s.rho, 0.125);
  EXPECT_THROW(ExactRiemann({1.0, -20.0, 1.0}, {1.0, 20.0, 1.0}), ConfigError);
  EXPECT_THROW(ExactRiemann({0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}), ConfigError);
}

TEST(Csv, SnapshotLinesAndRoundTrip) {
  Snapshot<2> s;
  s.t = 0.25;
  for (int k = 0; k < 7; ++k) {
    s.id.push_back(k);
    s.x.push_back({0.1 * k + 1.0 / 3.0, std::exp(-k)});
    s.macro.push_back({1.0 + 1e-17 * k, {std::sqrt(2.0) * k, -1.0 / (k + 1)}, 300.0 + std::acos(-1.0)});
  }
  const fs::path p = scratch_dir("csv") / "snap.csv";
  write_snapshot(s, p.string());
  std::ifstream in(p);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 8);

  const CsvTable t = read_csv(p.string());
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "y", "rho", "ux", "uy", "T"}));
  ASSERT_EQ(t.rows.size(), 7u);
  for (std::size_t k = 0; k < 7; ++k) {
    EXPECT_EQ(t.rows[k][0], s.x[k][0]);
    EXPECT_EQ(t.rows[k][1], s.x[k][1]);
    EXPECT_EQ(t.rows[k][2], s.macro[k].rho);
    EXPECT_EQ(t.rows[k][3], s.macro[k].U[0]);
    EXPECT_EQ(t.rows[k][4], s.macro[k].U[1]);
    EXPECT_EQ(t.rows[k][5], s.macro[k].T);
  }
  EXPECT_THROW(write_snapshot(s, "/nonexistent_dir_xyz/a.csv"), Error);
  EXPECT_THROW(read_csv("/nonexistent_dir_xyz/a.csv"), Error);
}

TEST(Csv, TrajectoryHeaders) {
  const fs::path d = scratch_dir("traj");
  std::vector<TrajectoryRow<1>> a = {{0.0, {0.1}, {0.0}, 0.0}, {0.5, {0.2}, {0.3}, 0.0}};
  write_trajectory(a, (d / "a.csv").string());
  EXPECT_EQ(read_csv((d / "a.csv").string()).header, (std::vector<std::string>{"t", "xc", "vx"}));
  std::vector<TrajectoryRow<2>> b = {{0.0, {0.1, 0.2}, {0.0, 1.0}, 0.5}};
  write_trajectory(b, (d / "b.csv").string());
  const auto t = read_csv((d / "b.csv").string());
  EXPECT_EQ(t.header, (std::vector<std::string>{"t", "xc", "yc", "vx", "vy", "omega"}));
  EXPECT_EQ(t.rows[0][5], 0.5);
}

TEST(Config, AllPresetsParse) {
  for (const auto& e : fs::directory_iterator(BGKALE_SCENARIO_DIR)) {
    if (e.path().extension() != ".json") continue;
    const auto c = load_config(e.path().string());
    EXPECT_FALSE(c.name.empty());
    EXPECT_GT(c.t_final, 0.0) << e.path();
    if (c.dim == 1) {
      const auto p = build_problem<1>(c);
      EXPECT_LT(p.dx, p.h);
    } else {
      const auto p = build_problem<2>(c);
      EXPECT_LT(p.dx, p.h);
    }
  }
}

TEST(Config, ResolutionAndErrors) {
  auto c = small_example1(0.01);
  auto p = build_problem<1>(c);
  EXPECT_NEAR(p.dx, 2.0 / 50, 1e-15);
  EXPECT_NEAR(p.h, p.dx / 0.35, 1e-15);
  EXPECT_NEAR(time_step(c, p), 0.5 * p.dx / 10.0, 1e-15);
  EXPECT_THROW(load_config("/nonexistent.json"), ConfigError);
  nlohmann::json j = c.tree;
  j["scheme"]["name"] = "rk4";
  EXPECT_THROW(build_problem<1>(parse_config(j)), ConfigError);
}

TEST(Run, ZeroFinalTimeGivesInitialSnapshotOnly) {
  auto c = small_example1(0.0);
  const auto rep = run<1>(c);
  ASSERT_EQ(rep.snapshots.size(), 1u);
  EXPECT_EQ(rep.snapshots[0].t, 0.0);
  EXPECT_EQ(rep.steps, 0u);
}

TEST(Run, SnapshotCadenceAndMonotoneTimes) {
  auto c = small_example1(0.01);
  RunOptions opt;
  opt.snapshot_every = 3;
  const auto rep = run<1>(c, opt);
  // dt = 0.002, 5 steps: t = 0, step 3 and the final one.
  EXPECT_EQ(rep.steps, 5u);
  EXPECT_EQ(rep.snapshots.size(), 3u);
  for (std::size_t k = 1; k < rep.snapshots.size(); ++k)
    EXPECT_GT(rep.snapshots[k].t, rep.snapshots[k - 1].t);
  EXPECT_NEAR(rep.snapshots.back().t, 0.01, 1e-15);
}

TEST(Run, DeterministicCsv) {
  const fs::path d = scratch_dir("det");
  for (int k = 0; k < 2; ++k) {
    const auto rep = run<1>(small_example1(0.01));
    write_snapshot(rep.snapshots.back(), (d / ("run" + std::to_string(k) + ".csv")).string());
  }
  const std::string a = slurp(d / "run0.csv"), b = slurp(d / "run1.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
}

TEST(Run, AbortCarriesStep) {
  auto c = small_example1(0.01);
  c.tree["tau"]["value"] = -1.0;
  EXPECT_THROW(run<1>(c), Error);
}

TEST(Probe, UniformFieldAndCoincidentPoints) {
  Snapshot<1> s;
  for (int k = 0; k <= 20; ++k) {
    s.id.push_back(k);
    s.x.push_back({0.05 * k});
    s.macro.push_back({2.0, {0.5}, 3.0 + 0.05 * k * k});
  }
  ProbeSpec spec;
  spec.count = 11;
  const auto pts = probe_points(spec, s);
  EXPECT_EQ(pts.front()[0], 0.0);
  EXPECT_EQ(pts.back()[0], 1.0);
  const auto q = sample_probe(s, pts, 0.05 / 0.35, 0.05, 6.0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    EXPECT_NEAR(q.macro[k].rho, 2.0, 1e-13);
    EXPECT_NEAR(q.macro[k].U[0], 0.5, 1e-13);
    EXPECT_EQ(q.macro[k].T, s.macro[2 * k].T);  // probe points coincide with cloud points
  }
}

TEST(Probe, PointsWithoutSupportAreNan) {
  // A cloud with a hole wider than h, as across a 1D plate.
  Snapshot<1> s;
  for (int k = 0; k <= 40; ++k) {
    const double x = 0.025 * k;
    if (x > 0.3 && x < 0.7) continue;
    s.id.push_back(k);
    s.x.push_back({x});
    s.macro.push_back({1.0, {0.0}, 2.0 + x});
  }
  ProbeSpec spec;
  spec.count = 11;
  const auto q = sample_probe(s, probe_points(spec, s), 0.025 / 0.35, 0.025, 6.0);
  EXPECT_TRUE(std::isnan(q.macro[5].T));
  EXPECT_NEAR(q.macro[0].T, 2.0, 1e-12);
  Snapshot<1> r = q;
  for (auto& m : r.macro) m.T += 0.5;
  const auto e = probe_errors(q, r);
  EXPECT_NEAR(e.first, 0.5, 1e-12);
  EXPECT_NEAR(e.second, 0.5, 1e-12);
}

TEST(Harness, ReferenceRowIsZeroAndOrdersFollowErrors) {
  const auto c = small_example1(0.01);
  const auto t = convergence_harness<1>(c, {26, 51});
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_GT(t.rows[0].L1, 0.0);
  EXPECT_EQ(t.rows[1].L1, 0.0);
  EXPECT_EQ(t.rows[1].L2, 0.0);

  std::vector<ConvergenceRow> rows(3);
  rows[0].dx = 0.04, rows[0].L1 = 8e-3, rows[0].L2 = 1e-2;
  rows[1].dx = 0.02, rows[1].L1 = 2e-3, rows[1].L2 = 5e-3;
  rows[2].dx = 0.01, rows[2].L1 = 0.0;
  fill_orders(rows);
  EXPECT_NEAR(rows[1].order_L1, 2.0, 1e-12);
  EXPECT_NEAR(rows[1].order_L2, 1.0, 1e-12);
  EXPECT_TRUE(std::isnan(rows[2].order_L1));

  // Probe errors of a run against itself vanish.
  const auto rep = run<1>(c);
  const auto p = sample_probe(rep, c.probe);
  const auto e = probe_errors(p, p);
  EXPECT_EQ(e.first, 0.0);
  EXPECT_EQ(e.second, 0.0);
}
