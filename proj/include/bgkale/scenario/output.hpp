#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bgkale/core/error.hpp"
#include "bgkale/velocity/macro.hpp"

namespace bgkale {

/// Field table of one output time, rows ordered by point id.
template <int Dim>
struct Snapshot {
  double t = 0.0;
  std::vector<std::uint64_t> id;
  std::vector<Vec<Dim>> x;
  std::vector<MacroState<Dim>> macro;

  std::size_t size() const { return x.size(); }
};

template <int Dim>
struct TrajectoryRow {
  double t = 0.0;
  Vec<Dim> xc{};
  Vec<Dim> v{};
  double omega = 0.0;
};

/// Plain numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    throw Error("no column '" + name + "'");
  }
};

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "': " + std::strerror(errno));
  return out;
}

inline void write_row(std::ostream& out, const std::vector<double>& row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (k) out << ',';
    out << format_number(row[k]);
  }
  out << '\n';
}

inline void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error("write to '" + path + "' failed: " + std::strerror(errno));
}

}  // namespace detail

template <int Dim>
std::vector<std::string> snapshot_header() {
  if constexpr (Dim == 1) {
    return {"x", "rho", "ux", "T"};
  } else {
    return {"x", "y", "rho", "ux", "uy", "T"};
  }
}

template <int Dim>
CsvTable snapshot_table(const Snapshot<Dim>& s) {
  CsvTable t{snapshot_header<Dim>(), {}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<double> row(s.x[i].begin(), s.x[i].end());
    row.push_back(s.macro[i].rho);
    for (int d = 0; d < Dim; ++d) row.push_back(s.macro[i].U[d]);
    row.push_back(s.macro[i].T);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline void write_csv(const CsvTable& t, const std::string& path) {
  auto out = detail::open_output(path);
  for (std::size_t k = 0; k < t.header.size(); ++k) out << (k ? "," : "") << t.header[k];
  out << '\n';
  for (const auto& r : t.rows) detail::write_row(out, r);
  detail::finish(out, path);
}

template <int Dim>
void write_snapshot(const Snapshot<Dim>& s, const std::string& path) {
  write_csv(snapshot_table(s), path);
}

template <int Dim>
void write_trajectory(const std::vector<TrajectoryRow<Dim>>& rows, const std::string& path) {
  CsvTable t;
  t.header = {"t", "xc"};
  if (Dim == 2) t.header.push_back("yc");
  t.header.push_back("vx");
  if (Dim == 2) t.header.insert(t.header.end(), {"vy", "omega"});
  for (const auto& r : rows) {
    std::vector<double> row{r.t};
    row.insert(row.end(), r.xc.begin(), r.xc.end());
    row.insert(row.end(), r.v.begin(), r.v.end());
    if (Dim == 2) row.push_back(r.omega);
    t.rows.push_back(std::move(row));
  }
  write_csv(t, path);
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "': " + std::strerror(errno));
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw Error("empty CSV '" + path + "'");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      row.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str()) throw Error("bad number '" + cell + "' in '" + path + "'");
    }
    if (row.size() != t.header.size()) throw Error("ragged row in '" + path + "'");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace bgkale
