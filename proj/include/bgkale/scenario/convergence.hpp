#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bgkale/scenario/run.hpp"

namespace bgkale {

struct ConvergenceRow {
  double resolution = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  std::size_t points = 0;
  double L1 = 0.0;
  double L2 = 0.0;
  double order_L1 = std::numeric_limits<double>::quiet_NaN();
  double order_L2 = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double wall_seconds = 0.0;
};

/// Discrete norms of the temperature difference over probe points.
template <int Dim>
std::pair<double, double> probe_errors(const Snapshot<Dim>& a, const Snapshot<Dim>& b) {
  if (a.size() != b.size() || a.size() == 0) throw Error("probe tables do not match");
  double l1 = 0.0;
  double l2 = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = a.macro[i].T - b.macro[i].T;
    if (std::isnan(e)) continue;  // probe without support on either side
    l1 += std::abs(e);
    l2 += e * e;
    ++n;
  }
  if (n == 0) throw Error("no probe point is supported on both clouds");
  return {l1 / static_cast<double>(n), std::sqrt(l2 / static_cast<double>(n))};
}

/// Observed orders between successive rows; rows with zero error (the
/// reference) get none.
inline void fill_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& a = rows[k - 1];
    auto& b = rows[k];
    if (!(a.L1 > 0.0 && b.L1 > 0.0)) continue;
    const double r = std::log(a.dx / b.dx);
    b.order_L1 = std::log(a.L1 / b.L1) / r;
    b.order_L2 = std::log(a.L2 / b.L2) / r;
  }
}

enum class ErrorMode {
  /// The finest entry is the reference for every row.
  Reference,
  /// Each row is compared with the next finer one; the finest row has none.
  Successive,
};

/// Runs every ladder entry (Nx in 1D, h in 2D, coarse to fine) and tables
/// the probe-grid temperature errors.
template <int Dim>
ConvergenceTable convergence_harness(const ScenarioConfig& base, const std::vector<double>& ladder,
                                     RunOptions opt = {}, ErrorMode mode = ErrorMode::Reference) {
  if (ladder.size() < 2) throw ConfigError("ladder needs at least two entries");
  opt.final_only = true;
  ConvergenceTable table;
  std::vector<Snapshot<Dim>> probes;
  for (double res : ladder) {
    ScenarioConfig cfg = base;
    set_resolution(cfg, res);
    const RunReport<Dim> rep = run<Dim>(cfg, opt);
    ConvergenceRow row;
    row.resolution = res;
    row.dx = rep.dx;
    row.dt = rep.dt;
    row.points = rep.snapshots.back().size();
    table.rows.push_back(row);
    table.wall_seconds += rep.wall_seconds;
    probes.push_back(sample_probe(rep, base.probe));
  }
  const std::size_t n = ladder.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t ref = mode == ErrorMode::Reference ? n - 1 : std::min(k + 1, n - 1);
    std::tie(table.rows[k].L1, table.rows[k].L2) =
        k == ref ? std::pair<double, double>{0.0, 0.0} : probe_errors(probes[k], probes[ref]);
  }
  fill_orders(table.rows);
  return table;
}

inline CsvTable convergence_csv(const ConvergenceTable& t) {
  CsvTable out{{"resolution", "dx", "dt", "points", "L1", "L2", "order_L1", "order_L2"}, {}};
  for (const auto& r : t.rows)
    out.rows.push_back({r.resolution, r.dx, r.dt, static_cast<double>(r.points), r.L1, r.L2,
                        r.order_L1, r.order_L2});
  return out;
}

}  // namespace bgkale
