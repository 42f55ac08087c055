// Acceptance checks. Each criterion prints one PASS/FAIL line; the exit
// code is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bgkale/bgkale.hpp"

using namespace bgkale;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string join_orders(const ConvergenceTable& t) {
  std::ostringstream s;
  bool first = true;
  for (const auto& r : t.rows) {
    if (std::isnan(r.order_L1)) continue;
    s << (first ? "" : ", ") << fmt("%.3f", r.order_L1);
    first = false;
  }
  return "[" + s.str() + "]";
}

std::vector<double> orders(const ConvergenceTable& t) {
  std::vector<double> o;
  for (const auto& r : t.rows)
    if (!std::isnan(r.order_L1)) o.push_back(r.order_L1);
  return o;
}

bool increasing(const std::vector<double>& o) {
  for (std::size_t k = 1; k < o.size(); ++k)
    if (!(o[k] > o[k - 1])) return false;
  return !o.empty();
}

ScenarioConfig preset(const std::string& name) {
  return load_config(std::string(BGKALE_SCENARIO_DIR) + "/" + name + ".json");
}

const std::vector<double> kEx1Ladder = {26, 51, 101, 201, 401, 801};

ConvergenceTable ex1_table(const std::string& scheme, double tau) {
  ScenarioConfig c = preset("example1_smooth_1d");
  set_scheme(c, scheme);
  c.tree["tau"]["value"] = tau;
  return convergence_harness<1>(parse_config(c.tree), kEx1Ladder);
}

// Orders increase along the ladder and reach 1.2 at the finest pair.
Outcome example1_first_order() {
  const auto t = ex1_table("first_order", 1e-5);
  const auto o = orders(t);
  const bool ok = increasing(o) && o.back() >= 1.2;
  return {ok, "L1 orders " + join_orders(t) + ", need increasing and finest >= 1.2, " +
                  fmt("%.0f s", t.wall_seconds)};
}

Outcome example1_ars() {
  struct Case {
    std::string scheme;
    double tau;
  };
  bool ok = true;
  std::string detail;
  for (const Case& k : {Case{"ars222", 1e-5}, Case{"ars221", 1e-5}, Case{"ars221", 0.1},
                        Case{"ars221", 1.0}}) {
    const auto t = ex1_table(k.scheme, k.tau);
    const auto o = orders(t);
    const bool pass = !o.empty() && o.back() >= 1.9;
    ok = ok && pass;
    detail += k.scheme + " tau=" + fmt("%g", k.tau) + " " + join_orders(t) + "; ";
  }
  return {ok, detail + "need finest >= 1.9"};
}

// Linear interpolation of the first crossing of `level` by rho(x) in [a, b].
double crossing(const Snapshot<1>& s, double level, double a, double b) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double x0 = s.x[i - 1][0], x1 = s.x[i][0];
    if (x0 < a || x1 > b) continue;
    const double r0 = s.macro[i - 1].rho - level, r1 = s.macro[i].rho - level;
    if (r0 == 0.0) return x0;
    if (r0 * r1 < 0.0) return x0 + (x1 - x0) * r0 / (r0 - r1);
  }
  return std::nan("");
}

Snapshot<1> sorted_by_x(Snapshot<1> s) {
  std::vector<std::size_t> order(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.x[a][0] < s.x[b][0]; });
  Snapshot<1> out;
  out.t = s.t;
  for (std::size_t i : order) {
    out.id.push_back(s.id[i]);
    out.x.push_back(s.x[i]);
    out.macro.push_back(s.macro[i]);
  }
  return out;
}

Outcome example2_sod() {
  const ScenarioConfig base = preset("example2_sod");
  const double R = base.tree["gas"]["R"].get<double>();
  const auto& ini = base.tree["initial"];
  const double T = ini["T"].get<double>(), rl = ini["rho_left"].get<double>(),
               rr = ini["rho_right"].get<double>(), x0 = ini["x0"].get<double>();
  const ExactRiemann exact({rl, 0.0, rl * R * T}, {rr, 0.0, rr * R * T}, 5.0 / 3.0);
  const auto& st = exact.star();

  std::vector<double> l1;
  bool bounded = true;
  double shock_err = 0.0, contact_err = 0.0, dx_fine = 0.0;
  std::string detail;
  for (int nx : {100, 200, 400}) {
    ScenarioConfig c = base;
    set_resolution(c, nx);
    RunOptions opt;
    opt.final_only = true;
    const auto rep = run<1>(c, opt);
    const Snapshot<1> s = sorted_by_x(rep.snapshots.back());
    const double t = s.t;
    double e = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double rho = s.macro[i].rho;
      if (rho < rr * 0.98 || rho > rl * 1.02) bounded = false;
      e += std::abs(rho - exact.sample((s.x[i][0] - x0) / t).rho);
    }
    l1.push_back(e / static_cast<double>(s.size()));
    if (nx == 400) {
      dx_fine = rep.dx;
      const double xc = x0 + exact.contact_speed() * t;
      const double xs = x0 + exact.right_shock_speed() * t;
      const double cs = std::sqrt(5.0 / 3.0 * st.p / st.rho_left);
      const double xtail = x0 + (st.u - cs) * t;
      const double mid = 0.5 * (xc + xs);
      const double xs_num = crossing(s, 0.5 * (st.rho_right + rr), mid, 1.0);
      const double xc_num = crossing(s, 0.5 * (st.rho_left + st.rho_right), xtail, mid);
      shock_err = std::abs(xs_num - xs);
      contact_err = std::abs(xc_num - xc);
      if (std::isnan(xs_num)) shock_err = INFINITY;
      if (std::isnan(xc_num)) contact_err = INFINITY;
    }
    detail += "Nx=" + std::to_string(nx) + " L1/rho_l " + fmt("%.4e", l1.back() / rl) + "; ";
  }
  const bool mono = l1[1] < l1[0] && l1[2] < l1[1];
  const bool located = shock_err <= 3 * dx_fine && contact_err <= 3 * dx_fine;
  detail += std::string(bounded ? "bounded" : "OUT OF BOUNDS") + "; shock " +
            fmt("%.4f", shock_err) + " contact " + fmt("%.4f", contact_err) + " vs 3dx " +
            fmt("%.4f", 3 * dx_fine);
  return {bounded && mono && located, detail};
}

Outcome example4_plate() {
  const double x_equi = -0.1;
  bool ok = true;
  std::string detail;
  for (auto [scheme, tol] : {std::pair<std::string, double>{"first_order", 0.05},
                             std::pair<std::string, double>{"ars221", 0.01}}) {
    RunOptions opt;
    opt.final_only = true;
    opt.scheme = scheme;
    const auto rep = run<1>(preset("example4_plate"), opt);
    const double x = rep.trajectories.at(0).back().xc[0];
    const double rel = std::abs(x - x_equi) / std::abs(x_equi);
    ok = ok && rel <= tol;
    detail += scheme + " x=" + fmt("%.5f", x) + " (" + fmt("%.2f%%", 100 * rel) + " vs " +
              fmt("%.0f%%", 100 * tol) + ", " + fmt("%.0f s", rep.wall_seconds) + "); ";
  }
  return {ok, detail};
}

Outcome example5_2d() {
  const std::vector<double> ladder = {0.208, 0.104, 0.052, 0.026};
  ScenarioConfig c = preset("example5_smooth_2d");
  const auto fo = convergence_harness<2>(c, ladder);
  set_scheme(c, "ars221");
  const auto ars = convergence_harness<2>(c, ladder);
  const auto a = orders(fo), b = orders(ars);
  bool ok = !a.empty() && !b.empty() && increasing(b);
  for (double o : a) ok = ok && o >= 0.6 && o <= 1.6;
  for (double o : b) ok = ok && o >= 1.3;
  return {ok, "first_order " + join_orders(fo) + " in [0.6, 1.6]; ars221 " + join_orders(ars) +
                  " >= 1.3 rising; " + fmt("%.0f s", fo.wall_seconds + ars.wall_seconds)};
}

// Mass, momentum and total energy of a reduced pair.
template <int Dim>
std::array<double, Dim + 2> invariants(const ReducedPair& p, const VelocityGrid<Dim>& g) {
  const auto raw = raw_moments<Dim>(p.g1, p.g2, g);
  std::array<double, Dim + 2> c{};
  c[0] = raw.mass;
  for (int d = 0; d < Dim; ++d) c[1 + d] = raw.momentum[d];
  c[Dim + 1] = energy_moment<Dim>(p.g1, p.g2, g, Vec<Dim>{});
  return c;
}

// Relative changes: density by rho, momentum by rho sqrt(R T0), energy by
// its own magnitude.
template <int Dim>
double conservation_trial(std::mt19937& rng, const VelocityGrid<Dim>& g, double R, double T0,
                          double ratio) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c0 = std::sqrt(R * T0);
  MacroState<Dim> m;
  m.rho = 1.0 + 0.5 * u(rng);
  for (int d = 0; d < Dim; ++d) m.U[d] = 0.8 * c0 * u(rng);
  m.T = T0 * (1.0 + 0.4 * u(rng));
  ReducedPair p = reduced_maxwellians(m, g, R);
  for (std::size_t j = 0; j < g.size(); ++j) {
    p.g1[j] *= 1.0 + 0.3 * u(rng);
    p.g2[j] *= 1.0 + 0.3 * u(rng);
  }
  const double dt = 1e-3 * (1.0 + u(rng) * 0.5);
  const ReducedPair out = relax_implicit<Dim>(p, dt, ratio * dt, g, R);
  const auto a = invariants<Dim>(p, g), b = invariants<Dim>(out, g);
  double worst = std::abs(b[0] - a[0]) / a[0];
  for (int d = 0; d < Dim; ++d) worst = std::max(worst, std::abs(b[1 + d] - a[1 + d]) / (a[0] * c0));
  worst = std::max(worst, std::abs(b[Dim + 1] - a[Dim + 1]) / std::abs(a[Dim + 1]));
  return worst;
}

Outcome conservation() {
  std::mt19937 rng(2024);
  const std::array<double, 3> ratios = {1e-3, 1.0, 1e3};
  // 1D unit gas, 1D Sod gas, 2D unit gas, 2D plate-scale gas.
  const VelocityGrid<1> g1(10.0, 20), g1s(2500.0, 30);
  const VelocityGrid<2> g2(8.0, 16), g2s(1500.0, 16);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double r = ratios[k % 3];
    double w = 0.0;
    switch ((k / 3) % 4) {
      case 0: w = conservation_trial<1>(rng, g1, 1.0, 1.0, r); break;
      case 1: w = conservation_trial<1>(rng, g1s, 208.0, 273.0, r); break;
      case 2: w = conservation_trial<2>(rng, g2, 1.0, 1.0, r); break;
      default: w = conservation_trial<2>(rng, g2s, 208.0, 270.0, r); break;
    }
    worst = std::max(worst, w);
  }
  return {worst <= 1e-8, "10000 calls, worst relative change " + fmt("%.3e", worst) + " <= 1e-8"};
}

Outcome stencils() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  // Quadratic exactness of the least-squares derivatives and the MLS value.
  double poly_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double h = 0.05 + 0.1 * (1.0 + u(rng));
    const Vec<2> c = {u(rng), u(rng)};
    std::array<double, 6> a;
    for (double& q : a) q = u(rng);
    auto f = [&](const Vec<2>& p) {
      const double x = p[0] - c[0], y = p[1] - c[1];
      return a[0] + a[1] * x + a[2] * y + a[3] * x * x + a[4] * x * y + a[5] * y * y;
    };
    std::vector<Vec<2>> x;
    std::vector<double> v;
    for (int k = 0; k < 16; ++k) {
      x.push_back(c + Vec<2>{0.7 * h * u(rng), 0.7 * h * u(rng)});
      v.push_back(f(x.back()));
    }
    const auto d = ls_derivatives<2>(v, x, c, f(c), h);
    poly_err = std::max({poly_err, std::abs(d.gradient[0] - a[1]), std::abs(d.gradient[1] - a[2]),
                         std::abs(d.hessian[0][0] - 2 * a[3]), std::abs(d.hessian[0][1] - a[4]),
                         std::abs(d.hessian[1][0] - a[4]), std::abs(d.hessian[1][1] - 2 * a[5])});

    PointCloud<2> cloud(h, 0.35 * h, 6.0, 1);
    for (std::size_t k = 0; k < x.size(); ++k) cloud.row(cloud.add_point(x[k], PointKind::Interior))[0] = v[k];
    cloud.rebuild_index();
    const MlsWeights w = mls_weights(cloud, c, 6);
    double s = 0.0;
    for (std::size_t k = 0; k < w.ids.size(); ++k) s += w.coef[k] * cloud.row(w.ids[k])[0];
    poly_err = std::max(poly_err, std::abs(s - a[0]));
  }

  // Neighbour search against brute force.
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_real_distribution<double> pos(-1.0, 1.0);
    const double h = 0.05 + 0.2 * (1.0 + u(rng)) / 2.0;
    const int n = 50 + static_cast<int>(rng() % 451);
    PointCloud<2> cloud(h, 0.35 * h, 6.0, 1);
    for (int k = 0; k < n; ++k) cloud.add_point({pos(rng), 0.5 * pos(rng)}, PointKind::Interior);
    cloud.rebuild_index();
    const auto xs = cloud.positions();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      std::set<std::size_t> ref;
      for (std::size_t k = 0; k < xs.size(); ++k)
        if (norm2(xs[k] - xs[i]) <= h * h) ref.insert(k);
      const auto nb = cloud.neighbors(i);
      if (std::set<std::size_t>(nb.begin(), nb.end()) != ref || nb.size() != ref.size())
        ++mismatches;
    }
  }

  // WENO weights: partition of unity and mirror symmetry.
  double sum_err = 0.0, mirror_err = 0.0;
  const double dx = 0.05, h = dx / 0.35;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs, ms, f;
    for (int k = -3; k <= 3; ++k) {
      const double x = k == 0 ? 0.0 : (k + 0.25 * u(rng)) * dx;
      xs.push_back(x);
      ms.push_back(-x);
      f.push_back(u(rng));
    }
    PointCloud<1> a(h, dx, 6.0, 1), b(h, dx, 6.0, 1);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      a.add_point({xs[k]}, PointKind::Interior);
      b.add_point({ms[k]}, PointKind::Interior);
    }
    a.rebuild_index();
    b.rebuild_index();
    const auto ra = weno_derivative<1>(a, 3, 1.0, 0, dx, f);
    const auto rb = weno_derivative<1>(b, 3, -1.0, 0, dx, f);
    sum_err = std::max({sum_err, std::abs(ra.omega[0] + ra.omega[1] + ra.omega[2] - 1.0),
                        std::abs(rb.omega[0] + rb.omega[1] + rb.omega[2] - 1.0)});
    mirror_err = std::max({mirror_err, std::abs(ra.omega[0] - rb.omega[2]),
                           std::abs(ra.omega[1] - rb.omega[1]), std::abs(ra.omega[2] - rb.omega[0]),
                           std::abs(ra.value + rb.value) / (1.0 + std::abs(ra.value))});
  }
  const bool ok = poly_err <= 1e-12 && mismatches == 0 && sum_err <= 1e-14 && mirror_err <= 1e-12;
  return {ok, "quadratic error " + fmt("%.2e", poly_err) + " <= 1e-12; neighbour mismatches " +
                  std::to_string(mismatches) + "/200 clouds; WENO sum " + fmt("%.1e", sum_err) +
                  ", mirror " + fmt("%.1e", mirror_err)};
}

template <int Dim>
double steady_drift(ScenarioConfig c, const std::string& scheme) {
  c.tree["initial"] = {{"profile", "uniform"}, {"rho", 1.3}, {"T", 0.9}};
  c.tree["boundaries"] = nlohmann::json::array();
  for (std::size_t k = 0; k < (Dim == 1 ? 2u : 1u); ++k)
    c.tree["boundaries"].push_back({{"type", "far_field"}, {"rho", 1.3}, {"T", 0.9}});
  set_scheme(c, scheme);
  ScenarioConfig p = parse_config(c.tree);
  RunOptions opt;
  opt.max_steps = 100;
  p.t_final = 1e9;
  const auto rep = run<Dim>(p, opt);
  const auto& a = rep.snapshots.front();
  const auto& b = rep.snapshots.back();
  if (rep.steps != 100 || a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.id[i] != b.id[i]) return INFINITY;
    d = std::max({d, std::abs(a.macro[i].rho - b.macro[i].rho), std::abs(a.macro[i].T - b.macro[i].T)});
    for (int k = 0; k < Dim; ++k) d = std::max(d, std::abs(a.macro[i].U[k] - b.macro[i].U[k]));
  }
  return d;
}

Outcome steady_state() {
  bool ok = true;
  std::string detail;
  ScenarioConfig one = preset("example1_smooth_1d");
  set_resolution(one, 101);
  ScenarioConfig two = preset("example5_smooth_2d");
  set_resolution(two, 0.104);
  for (const std::string s : {"first_order", "ars221", "ars222"}) {
    const double d1 = steady_drift<1>(one, s), d2 = steady_drift<2>(two, s);
    ok = ok && d1 <= 1e-10 && d2 <= 1e-10;
    detail += s + " 1D " + fmt("%.1e", d1) + " 2D " + fmt("%.1e", d2) + "; ";
  }
  return {ok, detail + "need <= 1e-10 over 100 steps"};
}

// Coarse capped runs of the moving-body presets.
Outcome smoke_2d() {
  constexpr std::size_t kSteps = 600;
  bool ok = true;
  std::string detail;
  for (const std::string name :
       {"example6_shuttle", "example7_chiral", "example7_circle", "example8_cavity"}) {
    const ScenarioConfig c = preset(name);
    const double vmax = c.tree["velocity"]["vmax"].get<double>();
    RunOptions opt;
    opt.max_steps = kSteps;
    opt.final_only = true;
    try {
      const auto rep = run<2>(c, opt);
      double umax = 0.0;
      bool finite = true;
      for (const auto& m : rep.snapshots.back().macro) {
        umax = std::max(umax, norm(m.U));
        finite = finite && std::isfinite(m.rho) && m.rho > 0.0 && std::isfinite(m.T) && m.T > 0.0;
      }
      const bool pass = finite && umax <= 2.0 * vmax && rep.steps == kSteps;
      ok = ok && pass;
      detail += name + " " + std::to_string(rep.steps) + " steps, " +
                std::to_string(rep.max_points) + " pts max, |U|max/vmax " +
                fmt("%.3f", umax / vmax) + (pass ? "" : " BAD") + "; ";
    } catch (const std::exception& e) {
      ok = false;
      detail += name + " aborted: " + e.what() + "; ";
    }
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"example1_first_order", example1_first_order},
      {"example1_ars", example1_ars},
      {"example2_sod", example2_sod},
      {"example4_plate", example4_plate},
      {"example5_2d", example5_2d},
      {"conservation", conservation},
      {"stencils", stencils},
      {"steady_state", steady_state},
      {"smoke_2d", smoke_2d},
  };
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> only;
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);
  for (const auto& name : only) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == name; })) {
      std::fprintf(stderr, "unknown criterion '%s'\n", name.c_str());
      return 2;
    }
  }
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
