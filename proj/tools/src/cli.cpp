#include "vcpoint/harness/cli.hpp"

#include <cstdlib>
#include <numbers>
#include <ostream>

#include <CLI11.hpp>

#include "vcpoint/harness/scenario.hpp"

namespace vcpoint::harness {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleEncountered:
    case ErrorCode::PolicyFailure:
    case ErrorCode::SingularAttitude:
    case ErrorCode::TargetCollision:
      return kExitAborted;
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidParameter:
    case ErrorCode::InfeasibleGeometry:
      return kExitConfig;
    default:
      return kExitFailure;
  }
}

std::filesystem::path default_out_dir(const std::string& scenario) {
  const char* root = std::getenv("VCPOINT_OUT_DIR");
  const std::filesystem::path base = (root != nullptr && *root != '\0') ? root : "vcpoint-runs";
  return base / scenario;
}

int run_command(const std::string& scenario, const std::string& config_path, const std::string& out_dir,
                const std::vector<std::string>& overrides, std::ostream& out) {
  ScenarioSpec spec = default_scenario(scenario);
  ConfigMap config = config_path.empty() ? ConfigMap{} : ConfigMap::load(config_path);
  for (const std::string& assignment : overrides) config.set(assignment);
  apply_config(spec, config);

  const std::filesystem::path dir = out_dir.empty() ? default_out_dir(scenario) : std::filesystem::path(out_dir);
  const RunArtifact artifact = run_scenario(spec, dir);

  out << "scenario " << artifact.scenario << " -> " << dir.string() << '\n';
  for (const RunRecord& r : artifact.runs) {
    const RunSummary& s = r.summary;
    out << "  " << r.label << ": samples=" << s.samples << " max_e_pt=" << s.max_e_pt << " max_e_z=" << s.max_e_z
        << " min|s3|=" << s.min_abs_s3 << " min_rho=" << s.min_rho << (s.feasible ? " feasible" : " INFEASIBLE")
        << '\n';
    if (r.aborted) out << "  " << r.label << " aborted: " << r.abort_message << '\n';
  }
  return artifact.aborted() ? kExitAborted : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation harness for the pointing and altitude task on a quadrotor", "vcpoint-sim"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a named scenario and write CSV, SVG and summary.json");
  std::string scenario;
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  run->add_option("scenario", scenario, "Scenario name (see list-scenarios)")->required();
  run->add_option("--config", config_path, "key=value configuration file");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--set", overrides, "Override a configuration key (key=value)");

  auto* list = app.add_subcommand("list-scenarios", "Print the scenario names");

  auto* arc = app.add_subcommand("emit-arc", "Write completed frames along a horizontal arc as CSV");
  double r = 0.9;
  double theta_min = 20.0;
  double theta_max = 150.0;
  int n = 14;
  double z0 = 0.58;
  std::string arc_out;
  arc->add_option("--r", r, "Horizontal radius about the target [m]");
  arc->add_option("--theta-min", theta_min, "First polar angle [deg]");
  arc->add_option("--theta-max", theta_max, "Last polar angle [deg]");
  arc->add_option("--n", n, "Number of frames");
  arc->add_option("--z0", z0, "Altitude [m]");
  arc->add_option("--out", arc_out, "Output CSV file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (list->parsed()) {
      for (const std::string& name : scenario_names()) out << name << '\n';
      return kExitOk;
    }
    if (arc->parsed()) {
      TaskSpec task;
      task.z0 = z0;
      task.validate();
      constexpr double deg = std::numbers::pi / 180.0;
      const auto frames = emit_arc_frames(r, theta_min * deg, theta_max * deg, n, task);
      if (arc_out.empty()) {
        write_arc_csv(out, frames);
      } else {
        write_arc_csv(arc_out, frames);
      }
      return kExitOk;
    }
    return run_command(scenario, config_path, out_dir, overrides, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace vcpoint::harness
