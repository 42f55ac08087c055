#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bgkale/bgkale.hpp"

namespace fs = std::filesystem;
using namespace bgkale;

namespace {

struct Common {
  std::string out_dir = ".";
  std::size_t snapshot_every = 0;
  std::string scheme;
  unsigned threads = 1;
  bool full = false;
  std::size_t max_steps = 0;
};

ScenarioConfig prepare(const std::string& path, const Common& c) {
  ScenarioConfig cfg = load_config(path);
  if (c.full) {
    if (!cfg.tree.contains("full_resolution"))
      throw ConfigError("scenario has no full_resolution block");
    cfg.tree.merge_patch(cfg.tree.at("full_resolution"));
    cfg = parse_config(cfg.tree);
  }
  return cfg;
}

RunOptions options(const Common& c) {
  RunOptions o;
  if (c.snapshot_every > 0) o.snapshot_every = c.snapshot_every;
  if (!c.scheme.empty()) o.scheme = c.scheme;
  if (c.max_steps > 0) o.max_steps = c.max_steps;
  return o;
}

template <int Dim>
int do_run(const ScenarioConfig& cfg, const Common& c) {
  const RunReport<Dim> rep = run<Dim>(cfg, options(c));
  fs::create_directories(c.out_dir);
  for (std::size_t k = 0; k < rep.snapshots.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "_snap_%04zu.csv", k);
    write_snapshot(rep.snapshots[k], (fs::path(c.out_dir) / (cfg.name + name)).string());
  }
  for (std::size_t b = 0; b < rep.trajectories.size(); ++b)
    write_trajectory(rep.trajectories[b],
                     (fs::path(c.out_dir) / (cfg.name + "_body" + std::to_string(b) + ".csv"))
                         .string());
  write_snapshot(sample_probe(rep, cfg.probe),
                 (fs::path(c.out_dir) / (cfg.name + "_probe.csv")).string());
  std::printf("%s: %zu steps%s, dt %.6g, dx %.6g, %zu points (max %zu), %zu insertions, "
              "%zu deletions, %zu merges, %.2f s\n",
              cfg.name.c_str(), rep.steps, rep.truncated ? " (capped)" : "", rep.dt, rep.dx,
              rep.snapshots.back().size(), rep.max_points, rep.stats.management.insertions,
              rep.stats.management.deletions, rep.stats.management.merges, rep.wall_seconds);
  return 0;
}

template <int Dim>
int do_converge(const ScenarioConfig& cfg, const Common& c, const std::vector<double>& ladder,
                const std::string& mode) {
  ErrorMode m = ErrorMode::Reference;
  if (mode == "successive") {
    m = ErrorMode::Successive;
  } else if (mode != "reference") {
    throw ConfigError("unknown error mode '" + mode + "'");
  }
  RunOptions o = options(c);
  const ConvergenceTable t = convergence_harness<Dim>(cfg, ladder, o, m);
  fs::create_directories(c.out_dir);
  const CsvTable csv = convergence_csv(t);
  write_csv(csv, (fs::path(c.out_dir) / (cfg.name + "_convergence.csv")).string());
  std::printf("%12s %12s %12s %8s %12s %12s %8s %8s\n", "resolution", "dx", "dt", "points",
              "L1", "L2", "ord_L1", "ord_L2");
  for (const auto& r : t.rows)
    std::printf("%12.6g %12.6g %12.6g %8zu %12.4e %12.4e %8.3f %8.3f\n", r.resolution, r.dx,
                r.dt, r.points, r.L1, r.L2, r.order_L1, r.order_L2);
  return 0;
}

EulerState parse_state(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
  if (v.size() != 3) throw ConfigError("state must be rho,u,p: '" + s + "'");
  return {v[0], v[1], v[2]};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meshfree ALE solver for the reduced BGK model"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", c.out_dir, "output directory");
    sub->add_option("--snapshot-every", c.snapshot_every, "steps between snapshots");
    sub->add_option("--scheme", c.scheme, "first_order, ars221 or ars222");
    sub->add_option("--threads", c.threads, "worker threads");
    sub->add_option("--max-steps", c.max_steps, "stop after this many steps");
    sub->add_flag("--full", c.full, "use the scenario's full_resolution block");
  };

  std::string config;
  auto* run_cmd = app.add_subcommand("run", "run a scenario");
  run_cmd->add_option("config", config, "scenario JSON")->required();
  add_common(run_cmd);

  std::vector<double> ladder;
  std::string mode = "reference";
  auto* conv_cmd = app.add_subcommand("converge", "convergence study");
  conv_cmd->add_option("config", config, "scenario JSON")->required();
  conv_cmd->add_option("--ladder", ladder, "Nx (1D) or h (2D), coarse to fine")
      ->required()
      ->delimiter(',');
  conv_cmd->add_option("--mode", mode, "reference or successive");
  add_common(conv_cmd);

  std::string left;
  std::string right;
  double t = 0.0;
  double gamma = 5.0 / 3.0;
  double x0 = 0.5;
  double xmin = 0.0;
  double xmax = 1.0;
  std::size_t count = 101;
  auto* rie_cmd = app.add_subcommand("riemann", "exact Euler Riemann solution");
  rie_cmd->add_option("left", left, "rho,u,p")->required();
  rie_cmd->add_option("right", right, "rho,u,p")->required();
  rie_cmd->add_option("t", t, "time")->required();
  rie_cmd->add_option("--gamma", gamma);
  rie_cmd->add_option("--x0", x0);
  rie_cmd->add_option("--xmin", xmin);
  rie_cmd->add_option("--xmax", xmax);
  rie_cmd->add_option("--count", count);

  CLI11_PARSE(app, argc, argv);
  try {
    set_thread_count(c.threads);
    if (*run_cmd || *conv_cmd) {
      const ScenarioConfig cfg = prepare(config, c);
      if (*run_cmd) return cfg.dim == 1 ? do_run<1>(cfg, c) : do_run<2>(cfg, c);
      return cfg.dim == 1 ? do_converge<1>(cfg, c, ladder, mode)
                          : do_converge<2>(cfg, c, ladder, mode);
    }
    const ExactRiemann rs(parse_state(left), parse_state(right), gamma);
    if (!(t > 0.0)) throw ConfigError("t must be positive");
    if (count < 2) throw ConfigError("count must be at least 2");
    std::printf("x,rho,u,p\n");
    for (std::size_t k = 0; k < count; ++k) {
      const double x = xmin + (xmax - xmin) * static_cast<double>(k) / (count - 1);
      const EulerState s = rs.sample((x - x0) / t);
      std::printf("%s,%s,%s,%s\n", format_number(x).c_str(), format_number(s.rho).c_str(),
                  format_number(s.u).c_str(), format_number(s.p).c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
