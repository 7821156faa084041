#pragma once

// Trajectory and arc-frame CSV files. Numbers are written with 17 significant
// digits so that every double round-trips exactly.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vcpoint/integrator.hpp"

namespace vcpoint::harness {

/// t, p_x..p_z, R_11..R_33 (row-major), v_x..v_z, O_1..O_3, f, tau_2, tau_3,
/// mu_z, mu_O3, mu_O2, e_pt, e_z, s3, rho.
const std::vector<std::string>& trajectory_columns();

/// One parsed trajectory row, in column order.
struct TrajectoryRow {
  double t = 0.0;
  RigidBodyState state;
  ControlInput input;
  ResidualVector residuals;
  TaskErrors errors;
  double s3 = 0.0;
  double rho = 0.0;
};

std::string format_number(double value);

void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples);
void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectorySample> samples);

/// Throws Error{ConfigError} on a header mismatch or malformed row.
std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in);
std::vector<TrajectoryRow> read_trajectory_csv(const std::filesystem::path& path);

}  // namespace vcpoint::harness
