#include "vcpoint/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "vcpoint/harness/svg.hpp"

namespace vcpoint::harness {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

const char* const kBlue = "#1f77b4";
const char* const kOrange = "#ff7f0e";
const char* const kGreen = "#2ca02c";
const char* const kRed = "#d62728";

Error config_error(const std::string& msg) { return Error(ErrorCode::ConfigError, msg); }

double require_double(const ConfigMap& c, const std::string& key) {
  const auto v = c.get_double(key);
  if (!v) throw config_error("missing value for " + key);
  return *v;
}

// Per-run field accessors shared by the sample and CSV-row summaries.
struct RowView {
  double e_pt, e_z, s3, rho, f;
  ResidualVector mu;
};

RowView view(const TrajectorySample& s) {
  return {s.errors.e_pt, s.errors.e_z, s.regularity.s3, s.regularity.rho, s.input.f, s.residuals};
}

RowView view(const TrajectoryRow& r) { return {r.errors.e_pt, r.errors.e_z, r.s3, r.rho, r.input.f, r.residuals}; }

template <typename T>
RunSummary summarize_impl(std::span<const T> items, const TaskSpec& task) {
  RunSummary out;
  out.samples = items.size();
  if (items.empty()) return out;
  out.min_abs_s3 = std::numeric_limits<double>::infinity();
  out.min_rho = std::numeric_limits<double>::infinity();
  out.min_f = std::numeric_limits<double>::infinity();
  out.max_f = -std::numeric_limits<double>::infinity();
  for (const T& item : items) {
    const RowView r = view(item);
    out.max_e_pt = std::max(out.max_e_pt, r.e_pt);
    out.max_e_z = std::max(out.max_e_z, r.e_z);
    out.min_abs_s3 = std::min(out.min_abs_s3, std::abs(r.s3));
    out.min_rho = std::min(out.min_rho, r.rho);
    out.min_f = std::min(out.min_f, r.f);
    out.max_f = std::max(out.max_f, r.f);
  }
  const RowView last = view(items.back());
  out.t_final = items.back().t;
  out.final_e_z = last.e_z;
  out.final_residuals = last.mu;
  out.feasible = out.min_abs_s3 >= task.eps_s && out.min_rho >= task.eps_rho;
  return out;
}

struct Run {
  RunRecord record;
  std::vector<TrajectorySample> samples;
};

Run execute(const std::string& label, const RigidBodyState& init, const Policy& policy, const ScenarioSpec& spec,
            const std::filesystem::path& out_dir) {
  Run run;
  run.record.label = label;
  try {
    run.samples = simulate(init, policy, spec.params, spec.task, spec.sim);
  } catch (const SimulationAborted& e) {
    run.samples = e.samples();
    run.record.aborted = true;
    run.record.abort_message = e.what();
  }
  run.record.csv_path = out_dir / (label + ".csv");
  write_trajectory_csv(run.record.csv_path, run.samples);
  run.record.summary = summarize(std::span<const TrajectorySample>(run.samples), spec.task);
  return run;
}

Series series_of(const Run& run, const std::function<double(const TrajectorySample&)>& field,
                 const std::string& label, const std::string& color, bool dashed = false) {
  Series s;
  s.label = label;
  s.color = color;
  s.dashed = dashed;
  s.x.reserve(run.samples.size());
  s.y.reserve(run.samples.size());
  for (const TrajectorySample& sample : run.samples) {
    s.x.push_back(sample.t);
    s.y.push_back(field(sample));
  }
  return s;
}

RigidBodyState initial_state(const ScenarioSpec& spec) {
  const double speed = spec.init.speed ? *spec.init.speed : relative_equilibrium_speed(spec.params, spec.task);
  return on_manifold_init(spec.init.theta_deg * kDeg, spec.init.r, spec.task, speed);
}

void save(const LinePlot& plot, const std::filesystem::path& path, RunArtifact& artifact) {
  plot.save(path);
  artifact.svg_paths.push_back(path);
}

void run_geometry_arc(const ScenarioSpec& spec, const std::filesystem::path& out_dir, RunArtifact& artifact) {
  const auto frames = emit_arc_frames(spec.init.r, spec.arc.theta_min_deg * kDeg, spec.arc.theta_max_deg * kDeg,
                                      spec.arc.n, spec.task);
  RunRecord record;
  record.label = "arc_frames";
  record.csv_path = out_dir / "arc_frames.csv";
  write_arc_csv(record.csv_path, frames);

  RunSummary& sum = record.summary;
  sum.samples = frames.size();
  sum.min_abs_s3 = std::numeric_limits<double>::infinity();
  sum.min_rho = std::numeric_limits<double>::infinity();
  for (const ArcFrame& fr : frames) {
    sum.max_e_pt = std::max(sum.max_e_pt, fr.e_pt);
    sum.max_e_z = std::max(sum.max_e_z, fr.e_z);
    sum.min_abs_s3 = std::min(sum.min_abs_s3, std::abs(fr.s3));
    sum.min_rho = std::min(sum.min_rho, fr.rho);
  }
  sum.final_e_z = frames.back().e_z;
  sum.min_f = sum.max_f = std::numeric_limits<double>::quiet_NaN();
  sum.final_residuals = {0.0, 0.0, 0.0};
  sum.feasible = sum.min_abs_s3 >= spec.task.eps_s && sum.min_rho >= spec.task.eps_rho;
  artifact.runs.push_back(record);

  // Body axes drawn at a fixed fraction of the arc radius.
  const double len = 0.25 * spec.init.r;
  const std::array<const char*, 3> colors = {kRed, kGreen, kBlue};
  const auto projected = [&](int ax, int ay, const std::string& title, const std::string& xl,
                             const std::string& yl, const std::string& file) {
    FramePlot plot;
    plot.title = title;
    plot.x_label = xl;
    plot.y_label = yl;
    for (const ArcFrame& fr : frames) {
      const double x = fr.p[static_cast<std::size_t>(ax)];
      const double y = fr.p[static_cast<std::size_t>(ay)];
      plot.path.emplace_back(x, y);
      for (int i = 0; i < 3; ++i) {
        const Vec3 b = body_axis(fr.R, i + 1);
        plot.segments.push_back({x, y, x + len * b[static_cast<std::size_t>(ax)],
                                 y + len * b[static_cast<std::size_t>(ay)], colors[static_cast<std::size_t>(i)]});
      }
    }
    plot.markers.emplace_back(spec.task.target[static_cast<std::size_t>(ax)],
                              spec.task.target[static_cast<std::size_t>(ay)]);
    const auto path = out_dir / file;
    plot.save(path);
    artifact.svg_paths.push_back(path);
  };
  projected(0, 1, "Body axes along the arc (top view; b1 red, b2 green, b3 blue)", "x [m]", "y [m]", "arc_top.svg");
  projected(0, 2, "Body axes along the arc (side view; b1 red, b2 green, b3 blue)", "x [m]", "z [m]",
            "arc_side.svg");
}

void run_on_manifold(const ScenarioSpec& spec, const std::filesystem::path& out_dir, RunArtifact& artifact) {
  const Policy policy = [&](const RigidBodyState& s) { return invariance_control(s, spec.params, spec.task); };
  const Run run = execute("invariant", initial_state(spec), policy, spec, out_dir);
  artifact.runs.push_back(run.record);

  LinePlot errors;
  errors.title = "Task errors under the invariance law";
  errors.y_label = "error";
  errors.log_y = true;
  errors.series.push_back(series_of(run, [](const auto& s) { return s.errors.e_pt; }, "e_pt", kBlue));
  errors.series.push_back(series_of(run, [](const auto& s) { return s.errors.e_z; }, "e_z", kOrange));
  save(errors, out_dir / "errors.svg", artifact);

  LinePlot mu;
  mu.title = "Residual magnitudes under the invariance law";
  mu.y_label = "|mu|";
  mu.log_y = true;
  mu.series.push_back(series_of(run, [](const auto& s) { return s.residuals.mu_z; }, "|mu_z|", kBlue));
  mu.series.push_back(series_of(run, [](const auto& s) { return s.residuals.mu_O3; }, "|mu_O3|", kOrange));
  mu.series.push_back(series_of(run, [](const auto& s) { return s.residuals.mu_O2; }, "|mu_O2|", kGreen));
  save(mu, out_dir / "residuals.svg", artifact);

  LinePlot thrust;
  thrust.title = "Thrust under the invariance law";
  thrust.y_label = "f [N]";
  thrust.series.push_back(series_of(run, [](const auto& s) { return s.input.f; }, "f", kBlue));
  thrust.references.push_back({spec.params.m() * spec.params.g(), "m g"});
  save(thrust, out_dir / "thrust.svg", artifact);
}

void run_residual_pair(const ScenarioSpec& spec, const std::filesystem::path& out_dir, RunArtifact& artifact) {
  const RigidBodyState init = perturb_vertical(initial_state(spec), spec.init.delta);
  const Gains zero{};
  const Policy undamped_policy = [&](const RigidBodyState& s) {
    return control_stabilized(s, spec.params, spec.task, zero);
  };
  const Policy damped_policy = [&](const RigidBodyState& s) {
    return control_stabilized(s, spec.params, spec.task, spec.gains);
  };
  const Run undamped = execute("undamped", init, undamped_policy, spec, out_dir);
  const Run damped = execute("damped", init, damped_policy, spec, out_dir);
  artifact.runs.push_back(undamped.record);
  artifact.runs.push_back(damped.record);

  const auto pair = [&](LinePlot& plot, const std::function<double(const TrajectorySample&)>& field,
                        const std::string& name) {
    plot.series.push_back(series_of(undamped, field, name + " (k = 0)", kOrange, true));
    plot.series.push_back(series_of(damped, field, name + " (damped)", kBlue));
  };
  const double mg = spec.params.m() * spec.params.g();

  if (spec.name == "vertical-residual-compare") {
    LinePlot ez;
    ez.title = "Altitude error with and without vertical damping";
    ez.y_label = "e_z [m]";
    pair(ez, [](const auto& s) { return s.errors.e_z; }, "e_z");
    save(ez, out_dir / "altitude_error.svg", artifact);

    LinePlot mu;
    mu.title = "Vertical residual";
    mu.y_label = "|mu_z| [m/s]";
    mu.log_y = true;
    pair(mu, [](const auto& s) { return s.residuals.mu_z; }, "|mu_z|");
    save(mu, out_dir / "mu_z.svg", artifact);

    LinePlot thrust;
    thrust.title = "Thrust";
    thrust.y_label = "f [N]";
    pair(thrust, [](const auto& s) { return s.input.f; }, "f");
    thrust.references = {{0.5 * mg, "0.5 m g"}, {mg, "m g"}, {2.0 * mg, "2 m g"}};
    save(thrust, out_dir / "thrust.svg", artifact);
  } else if (spec.name == "regularity-monitor") {
    LinePlot s3;
    s3.title = "Attitude regularity |e3^T b3|";
    s3.y_label = "|s3|";
    pair(s3, [](const auto& s) { return std::abs(s.regularity.s3); }, "|s3|");
    s3.references.push_back({spec.task.eps_s, "eps_s"});
    save(s3, out_dir / "s3.svg", artifact);

    LinePlot rho;
    rho.title = "Distance to target";
    rho.y_label = "rho [m]";
    pair(rho, [](const auto& s) { return s.regularity.rho; }, "rho");
    rho.references.push_back({spec.task.eps_rho, "eps_rho"});
    save(rho, out_dir / "rho.svg", artifact);
  } else {
    LinePlot tau;
    tau.title = "Torque inputs";
    tau.y_label = "torque [N m]";
    tau.series.push_back(series_of(undamped, [](const auto& s) { return s.input.tau2; }, "tau2 (k = 0)", kOrange, true));
    tau.series.push_back(series_of(undamped, [](const auto& s) { return s.input.tau3; }, "tau3 (k = 0)", kRed, true));
    tau.series.push_back(series_of(damped, [](const auto& s) { return s.input.tau2; }, "tau2 (damped)", kBlue));
    tau.series.push_back(series_of(damped, [](const auto& s) { return s.input.tau3; }, "tau3 (damped)", kGreen));
    save(tau, out_dir / "torques.svg", artifact);
  }
}

nlohmann::json to_json(const RunSummary& s) {
  return {{"samples", s.samples},
          {"t_final", s.t_final},
          {"max_e_pt", s.max_e_pt},
          {"max_e_z", s.max_e_z},
          {"final_e_z", s.final_e_z},
          {"final_residuals", {{"mu_z", s.final_residuals.mu_z},
                               {"mu_O3", s.final_residuals.mu_O3},
                               {"mu_O2", s.final_residuals.mu_O2}}},
          {"min_abs_s3", s.min_abs_s3},
          {"min_rho", s.min_rho},
          {"min_f", s.min_f},
          {"max_f", s.max_f},
          {"feasible", s.feasible}};
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"geometry-arc", "invariance-on-manifold",
                                                 "vertical-residual-compare", "regularity-monitor", "torque-trace"};
  return names;
}

void ScenarioSpec::validate() const {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw config_error("unknown scenario '" + name + "'");
  }
  task.validate();
  gains.validate();
  sim.validate();
  if (!(std::isfinite(init.theta_deg) && std::isfinite(init.r) && init.r > 0.0 && std::isfinite(init.delta))) {
    throw Error(ErrorCode::InvalidParameter, "initial arc point must be finite with r > 0");
  }
  if (init.speed && !std::isfinite(*init.speed)) throw Error(ErrorCode::InvalidParameter, "speed must be finite");
  if (arc.n < 2) throw Error(ErrorCode::InvalidParameter, "arc.n must be at least 2");
}

ScenarioSpec default_scenario(const std::string& name) {
  ScenarioSpec spec;
  spec.name = name;
  if (name == "invariance-on-manifold") {
    spec.sim.T = 10.0;
  } else if (name == "vertical-residual-compare" || name == "regularity-monitor" || name == "torque-trace") {
    spec.sim.T = 3.0;
  } else if (name != "geometry-arc") {
    throw config_error("unknown scenario '" + name + "'");
  }
  return spec;
}

void apply_config(ScenarioSpec& spec, const ConfigMap& config) {
  double m = spec.params.m();
  double g = spec.params.g();
  Vec3 J = spec.params.inertia();

  for (const auto& [key, value] : config.values()) {
    if (key == "vehicle.m") m = require_double(config, key);
    else if (key == "vehicle.g") g = require_double(config, key);
    else if (key == "vehicle.J1") J.x = require_double(config, key);
    else if (key == "vehicle.J2") J.y = require_double(config, key);
    else if (key == "vehicle.J3") J.z = require_double(config, key);
    else if (key == "task.target_x") spec.task.target.x = require_double(config, key);
    else if (key == "task.target_y") spec.task.target.y = require_double(config, key);
    else if (key == "task.target_z") spec.task.target.z = require_double(config, key);
    else if (key == "task.z0") spec.task.z0 = require_double(config, key);
    else if (key == "task.eps_s") spec.task.eps_s = require_double(config, key);
    else if (key == "task.eps_rho") spec.task.eps_rho = require_double(config, key);
    else if (key == "task.convention") {
      if (value == "geometric") spec.task.convention = SignConvention::geometric;
      else if (value == "reversed") spec.task.convention = SignConvention::reversed;
      else throw config_error("task.convention must be 'geometric' or 'reversed', got '" + value + "'");
    }
    else if (key == "gains.k_z") spec.gains.k_z = require_double(config, key);
    else if (key == "gains.k_O3") spec.gains.k_O3 = require_double(config, key);
    else if (key == "gains.k_O2") spec.gains.k_O2 = require_double(config, key);
    else if (key == "sim.h") spec.sim.h = require_double(config, key);
    else if (key == "sim.T") spec.sim.T = require_double(config, key);
    else if (key == "sim.reorthonormalize_every") spec.sim.reorthonormalize_every = *config.get_int(key);
    else if (key == "sim.abort_on_infeasible") spec.sim.abort_on_infeasible = *config.get_bool(key);
    else if (key == "init.theta_deg") spec.init.theta_deg = require_double(config, key);
    else if (key == "init.r") spec.init.r = require_double(config, key);
    else if (key == "init.speed") {
      if (value == "orbit") spec.init.speed.reset();
      else spec.init.speed = require_double(config, key);
    }
    else if (key == "init.delta") spec.init.delta = require_double(config, key);
    else if (key == "arc.theta_min_deg") spec.arc.theta_min_deg = require_double(config, key);
    else if (key == "arc.theta_max_deg") spec.arc.theta_max_deg = require_double(config, key);
    else if (key == "arc.n") spec.arc.n = *config.get_int(key);
    else throw config_error("unknown configuration key '" + key + "'");
  }
  spec.params = VehicleParams(m, g, J.x, J.y, J.z);
}

std::vector<ArcFrame> emit_arc_frames(double r, double theta_min, double theta_max, int n, const TaskSpec& spec) {
  if (n < 2) throw Error(ErrorCode::InvalidParameter, "arc needs at least 2 points");
  if (!(std::isfinite(theta_min) && std::isfinite(theta_max))) {
    throw Error(ErrorCode::InvalidParameter, "arc bounds must be finite");
  }
  std::vector<ArcFrame> frames;
  frames.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double theta = theta_min + (theta_max - theta_min) * static_cast<double>(i) / static_cast<double>(n - 1);
    const RigidBodyState s = on_manifold_init(theta, r, spec, 0.0);
    const TaskErrors err = task_errors(s, spec);
    const RegularityReport reg = regularity(s, spec);
    frames.push_back({theta, s.p, s.R, err.e_pt, err.e_z, reg.s3, reg.rho});
  }
  return frames;
}

const std::vector<std::string>& arc_columns() {
  static const std::vector<std::string> columns = {"theta", "p_x",  "p_y",  "p_z",  "b1_x", "b1_y",
                                                   "b1_z",  "b2_x", "b2_y", "b2_z", "b3_x", "b3_y",
                                                   "b3_z",  "e_pt", "e_z",  "s3",   "rho"};
  return columns;
}

void write_arc_csv(const std::filesystem::path& path, std::span<const ArcFrame> frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_arc_csv(out, frames);
}

void write_arc_csv(std::ostream& out, std::span<const ArcFrame> frames) {
  const auto& columns = arc_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const ArcFrame& fr : frames) {
    const Vec3 b1 = body_axis(fr.R, 1);
    const Vec3 b2 = body_axis(fr.R, 2);
    const Vec3 b3 = body_axis(fr.R, 3);
    const double values[] = {fr.theta, fr.p.x, fr.p.y, fr.p.z, b1.x,    b1.y,   b1.z, b2.x, b2.y,
                             b2.z,     b3.x,   b3.y,   b3.z,   fr.e_pt, fr.e_z, fr.s3, fr.rho};
    bool first = true;
    for (double v : values) {
      out << (first ? "" : ",") << format_number(v);
      first = false;
    }
    out << '\n';
  }
}

RunSummary summarize(std::span<const TrajectorySample> samples, const TaskSpec& task) {
  return summarize_impl(samples, task);
}

RunSummary summarize(std::span<const TrajectoryRow> rows, const TaskSpec& task) { return summarize_impl(rows, task); }

bool RunArtifact::aborted() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunRecord& r) { return r.aborted; });
}

RunArtifact run_scenario(const ScenarioSpec& spec, const std::filesystem::path& out_dir) {
  spec.validate();
  std::filesystem::create_directories(out_dir);

  RunArtifact artifact;
  artifact.scenario = spec.name;
  if (spec.name == "geometry-arc") {
    run_geometry_arc(spec, out_dir, artifact);
  } else if (spec.name == "invariance-on-manifold") {
    run_on_manifold(spec, out_dir, artifact);
  } else {
    run_residual_pair(spec, out_dir, artifact);
  }

  nlohmann::json doc;
  doc["scenario"] = spec.name;
  doc["convention"] = spec.task.convention == SignConvention::geometric ? "geometric" : "reversed";
  doc["runs"] = nlohmann::json::array();
  for (const RunRecord& r : artifact.runs) {
    doc["runs"].push_back({{"label", r.label},
                           {"csv", r.csv_path.filename().string()},
                           {"aborted", r.aborted},
                           {"abort_message", r.abort_message},
                           {"summary", to_json(r.summary)}});
  }
  doc["svg"] = nlohmann::json::array();
  for (const auto& p : artifact.svg_paths) doc["svg"].push_back(p.filename().string());

  artifact.summary_path = out_dir / "summary.json";
  std::ofstream out(artifact.summary_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + artifact.summary_path.string());
  out << doc.dump(2) << '\n';
  return artifact;
}

}  // namespace vcpoint::harness
