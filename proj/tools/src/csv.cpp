#include "vcpoint/harness/csv.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint::harness {

namespace {

constexpr std::size_t kColumnCount = 29;

std::array<double, kColumnCount> flatten(const TrajectorySample& s) {
  const Mat3& R = s.state.R.matrix();
  return {s.t,
          s.state.p.x, s.state.p.y, s.state.p.z,
          R(0, 0), R(0, 1), R(0, 2), R(1, 0), R(1, 1), R(1, 2), R(2, 0), R(2, 1), R(2, 2),
          s.state.v.x, s.state.v.y, s.state.v.z,
          s.state.omega.x, s.state.omega.y, s.state.omega.z,
          s.input.f, s.input.tau2, s.input.tau3,
          s.residuals.mu_z, s.residuals.mu_O3, s.residuals.mu_O2,
          s.errors.e_pt, s.errors.e_z,
          s.regularity.s3, s.regularity.rho};
}

TrajectoryRow unflatten(const std::array<double, kColumnCount>& c) {
  TrajectoryRow row;
  row.t = c[0];
  row.state.p = {c[1], c[2], c[3]};
  row.state.R = Rotation(Mat3{{c[4], c[5], c[6], c[7], c[8], c[9], c[10], c[11], c[12]}});
  row.state.v = {c[13], c[14], c[15]};
  row.state.omega = {c[16], c[17], c[18]};
  row.input = {c[19], 0.0, c[20], c[21]};
  row.residuals = {c[22], c[23], c[24]};
  row.errors = {c[25], c[26]};
  row.s3 = c[27];
  row.rho = c[28];
  return row;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> columns = {
      "t",     "p_x",   "p_y",   "p_z",   "R_11",  "R_12", "R_13",  "R_21", "R_22", "R_23", "R_31",
      "R_32",  "R_33",  "v_x",   "v_y",   "v_z",   "O_1",  "O_2",   "O_3",  "f",    "tau_2", "tau_3",
      "mu_z",  "mu_O3", "mu_O2", "e_pt",  "e_z",   "s3",   "rho"};
  return columns;
}

std::string format_number(double value) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample> samples) {
  const auto& columns = trajectory_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const TrajectorySample& s : samples) {
    const auto values = flatten(s);
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << format_number(values[i]);
    out << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, std::span<const TrajectorySample> samples) {
  std::ofstream out = open_output(path);
  write_trajectory_csv(out, samples);
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream& in) {
  const auto& columns = trajectory_columns();
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ConfigError, "empty trajectory CSV");
  std::string expected;
  for (std::size_t i = 0; i < columns.size(); ++i) expected += (i ? "," : "") + columns[i];
  if (line != expected) throw Error(ErrorCode::ConfigError, "unexpected trajectory CSV header: " + line);

  std::vector<TrajectoryRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<double, kColumnCount> values{};
    std::size_t count = 0;
    const char* cursor = line.data();
    const char* end = line.data() + line.size();
    while (cursor <= end && count < columns.size()) {
      const auto [ptr, ec] = std::from_chars(cursor, end, values[count]);
      if (ec != std::errc{}) break;
      ++count;
      cursor = ptr;
      if (cursor == end) break;
      if (*cursor != ',') break;
      ++cursor;
    }
    if (count != columns.size() || cursor != end) {
      throw Error(ErrorCode::ConfigError, "malformed trajectory CSV row " + std::to_string(line_no));
    }
    rows.push_back(unflatten(values));
  }
  return rows;
}

std::vector<TrajectoryRow> read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open " + path.string());
  return read_trajectory_csv(in);
}

}  // namespace vcpoint::harness
