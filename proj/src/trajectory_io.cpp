#include "biped5/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "biped5/errors.hpp"
#include "biped5/format.hpp"

namespace biped5 {

namespace {

void add_group(std::vector<std::string>& cols, const std::string& prefix,
               const std::string& suffix) {
  for (int i = 1; i <= kNumJoints; ++i) cols.push_back(prefix + std::to_string(i) + suffix);
}

// Plain linear interpolation of every stored series.
Trajectory interpolate(const Trajectory& traj, const std::vector<double>& times) {
  Trajectory out;
  out.has_actual = traj.has_actual;
  out.saturation_events = traj.saturation_events;
  out.times = times;
  std::size_t seg = 0;
  for (double t : times) {
    while (seg + 2 < traj.times.size() && traj.times[seg + 1] < t) ++seg;
    double w = 0.0;
    if (traj.times.size() > 1) w = (t - traj.times[seg]) / (traj.times[seg + 1] - traj.times[seg]);
    const std::size_t next = traj.times.size() > 1 ? seg + 1 : seg;
    auto lerp = [&](const std::vector<Vec5>& v, std::vector<Vec5>& dst) {
      if (!v.empty()) dst.push_back((1.0 - w) * v[seg] + w * v[next]);
    };
    lerp(traj.theta, out.theta);
    lerp(traj.theta_dot, out.theta_dot);
    lerp(traj.theta_d, out.theta_d);
    lerp(traj.theta_dot_d, out.theta_dot_d);
    lerp(traj.theta_ddot_d, out.theta_ddot_d);
    lerp(traj.torques, out.torques);
  }
  return out;
}

void write_row_group(std::string& line, const Vec5& v) {
  for (int i = 0; i < kNumJoints; ++i) {
    line += ',';
    line += format_double(v[i]);
  }
}

}  // namespace

std::vector<std::string> trajectory_columns(bool has_actual) {
  std::vector<std::string> cols{"t"};
  if (has_actual) {
    add_group(cols, "theta", "");
    add_group(cols, "dtheta", "");
  }
  add_group(cols, "theta", "_d");
  add_group(cols, "dtheta", "_d");
  add_group(cols, "ddtheta", "_d");
  if (has_actual) add_group(cols, "u", "");
  return cols;
}

void write_trajectory_csv(const Trajectory& traj, double grid_spacing, std::ostream& out) {
  traj.check();
  const Trajectory& rows =
      grid_spacing > 0.0 && traj.size() > 1
          ? interpolate(traj, uniform_grid(traj.times.front(), traj.times.back(), grid_spacing))
          : traj;
  const auto cols = trajectory_columns(rows.has_actual);
  std::string line;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) line += ',';
    line += cols[i];
  }
  out << line << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    line = format_double(rows.times[r]);
    if (rows.has_actual) {
      write_row_group(line, rows.theta[r]);
      write_row_group(line, rows.theta_dot[r]);
    }
    write_row_group(line, rows.theta_d[r]);
    write_row_group(line, rows.theta_dot_d[r]);
    write_row_group(line, rows.theta_ddot_d[r]);
    if (rows.has_actual) write_row_group(line, rows.torques[r]);
    out << line << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, double grid_spacing,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_trajectory_csv(traj, grid_spacing, out);
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      table.header = split_fields(line);
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size())
      throw ParseError(line_no, "", "expected " + std::to_string(table.header.size()) +
                                        " fields, found " + std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      const auto [end, ec] = std::from_chars(f.data(), f.data() + f.size(), row[i]);
      if (f.empty() || ec != std::errc() || end != f.data() + f.size())
        throw ParseError(line_no, table.header[i], "not a number: '" + f + "'");
    }
    table.rows.push_back(std::move(row));
  }
  if (line_no == 0) throw ParseError(1, "", "empty file (missing header)");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_csv(in);
}

Trajectory trajectory_from_table(const CsvTable& table) {
  Trajectory traj;
  traj.has_actual = table.column("theta1") >= 0;
  if (table.header != trajectory_columns(traj.has_actual))
    throw ParseError(1, "", "header does not match the trajectory column layout");
  for (const auto& row : table.rows) {
    std::size_t c = 0;
    auto take = [&]() {
      Vec5 v;
      for (int i = 0; i < kNumJoints; ++i) v[i] = row[c++];
      return v;
    };
    traj.times.push_back(row[c++]);
    if (traj.has_actual) {
      traj.theta.push_back(take());
      traj.theta_dot.push_back(take());
    }
    traj.theta_d.push_back(take());
    traj.theta_dot_d.push_back(take());
    traj.theta_ddot_d.push_back(take());
    if (traj.has_actual) traj.torques.push_back(take());
  }
  traj.check();
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  return trajectory_from_table(read_csv(path));
}

}  // namespace biped5
