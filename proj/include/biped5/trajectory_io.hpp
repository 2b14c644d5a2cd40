#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "biped5/simulation.hpp"

namespace biped5 {

// Column names for a trajectory, in file order:
//   t, [theta1..5, dtheta1..5,] theta1_d..5_d, dtheta1_d..5_d, ddtheta1_d..5_d [, u1..5]
// The bracketed groups are present only for closed-loop trajectories.
std::vector<std::string> trajectory_columns(bool has_actual);

// Comma-separated, '.' decimal separator, 17 significant digits, '\n' line
// ends, one header row. grid_spacing > 0 first resamples every series by
// linear interpolation onto a uniform grid; otherwise rows are written as
// stored. An empty trajectory produces the header only.
void write_trajectory_csv(const Trajectory& traj, double grid_spacing, std::ostream& out);
void write_trajectory_csv(const Trajectory& traj, double grid_spacing,
                          const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a named column, or -1.
  int column(const std::string& name) const;
};

// Throws ParseError whose line() is the 1-based file line of the bad row.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

Trajectory trajectory_from_table(const CsvTable& table);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace biped5
