#pragma once

// Named scenarios: configuration, execution, CSV/SVG artifacts and summaries.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcpoint/control.hpp"
#include "vcpoint/harness/config.hpp"
#include "vcpoint/harness/csv.hpp"
#include "vcpoint/integrator.hpp"

namespace vcpoint::harness {

const std::vector<std::string>& scenario_names();

struct InitSpec {
  double theta_deg = 20.0;
  double r = 0.9;
  /// Tangential speed; empty means the circular relative-equilibrium speed.
  std::optional<double> speed;
  /// Vertical velocity perturbation applied in the residual scenarios.
  double delta = 0.1;
};

struct ArcSpec {
  double theta_min_deg = 20.0;
  double theta_max_deg = 150.0;
  int n = 14;
};

struct ScenarioSpec {
  std::string name;
  VehicleParams params = VehicleParams::reference_quadrotor();
  TaskSpec task{Vec3{}, 0.58};
  /// Gains of the damped run; the undamped run always uses zero gains.
  Gains gains{5.0, 0.0, 0.0};
  SimConfig sim;
  InitSpec init;
  ArcSpec arc;

  /// Throws Error{ConfigError} for an unknown name, otherwise validates nested records.
  void validate() const;
};

/// Defaults for a named scenario. Throws Error{ConfigError} for an unknown name.
ScenarioSpec default_scenario(const std::string& name);

/// Overrides fields from dotted keys (vehicle.m, task.z0, gains.k_z, sim.h,
/// init.theta_deg, arc.n, ...). Throws Error{ConfigError} on unknown keys or bad values.
void apply_config(ScenarioSpec& spec, const ConfigMap& config);

/// One completed frame along the arc.
struct ArcFrame {
  double theta = 0.0;  ///< rad
  Vec3 p;
  Rotation R;
  double e_pt = 0.0;
  double e_z = 0.0;
  double s3 = 0.0;
  double rho = 0.0;
};

/// n equally spaced points theta_min..theta_max (rad) on the horizontal circle of
/// radius r about the target at altitude z0, each with its completed frame.
/// Throws Error{InvalidParameter} if n < 2 and Error{InfeasibleGeometry} for
/// infeasible frames.
std::vector<ArcFrame> emit_arc_frames(double r, double theta_min, double theta_max, int n,
                                      const TaskSpec& spec);

const std::vector<std::string>& arc_columns();
void write_arc_csv(std::ostream& out, std::span<const ArcFrame> frames);
void write_arc_csv(const std::filesystem::path& path, std::span<const ArcFrame> frames);

struct RunSummary {
  std::size_t samples = 0;
  double t_final = 0.0;
  double max_e_pt = 0.0;
  double max_e_z = 0.0;
  double final_e_z = 0.0;
  ResidualVector final_residuals;
  double min_abs_s3 = 0.0;
  double min_rho = 0.0;
  double min_f = 0.0;
  double max_f = 0.0;
  /// |s3| >= eps_s and rho >= eps_rho at every sample.
  bool feasible = false;
};

RunSummary summarize(std::span<const TrajectorySample> samples, const TaskSpec& task);
/// Same summary computed from parsed CSV rows.
RunSummary summarize(std::span<const TrajectoryRow> rows, const TaskSpec& task);

struct RunRecord {
  std::string label;
  std::filesystem::path csv_path;
  RunSummary summary;
  bool aborted = false;
  std::string abort_message;
};

struct RunArtifact {
  std::string scenario;
  std::vector<RunRecord> runs;
  std::vector<std::filesystem::path> svg_paths;
  std::filesystem::path summary_path;

  bool aborted() const;
};

/// Runs the scenario, writing CSV, SVG and summary.json into out_dir (created
/// if needed). A regularity or policy abort does not throw: the partial
/// trajectory is written and the run is flagged as aborted.
RunArtifact run_scenario(const ScenarioSpec& spec, const std::filesystem::path& out_dir);

}  // namespace vcpoint::harness
