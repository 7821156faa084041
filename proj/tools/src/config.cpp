#include "vcpoint/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vcpoint/error.hpp"

namespace vcpoint::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& message) { throw Error(ErrorCode::ConfigError, message); }

std::pair<std::string, std::string> split_assignment(std::string_view line, const std::string& where) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) config_error(where + ": expected key=value, got '" + std::string(line) + "'");
  const std::string key(trim(line.substr(0, eq)));
  const std::string value(trim(line.substr(eq + 1)));
  if (key.empty()) config_error(where + ": empty key");
  if (value.empty()) config_error(where + ": empty value for '" + key + "'");
  return {key, value};
}

}  // namespace

ConfigMap ConfigMap::parse(std::string_view text, const std::string& origin) {
  ConfigMap cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto [key, value] = split_assignment(line, origin + ":" + std::to_string(line_no));
    if (cfg.contains(key)) config_error(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    cfg.values_.emplace(std::move(key), std::move(value));
  }
  return cfg;
}

ConfigMap ConfigMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void ConfigMap::set(std::string_view assignment) {
  auto [key, value] = split_assignment(trim(assignment), "--set");
  set(key, value);
}

void ConfigMap::set(const std::string& key, const std::string& value) { values_[key] = value; }

std::optional<std::string> ConfigMap::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> ConfigMap::get_double(const std::string& key) const {
  const auto raw = get_string(key);
  if (!raw) return std::nullopt;
  double value = 0.0;
  const char* end = raw->data() + raw->size();
  const auto [ptr, ec] = std::from_chars(raw->data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    config_error("'" + key + "' expects a number, got '" + *raw + "'");
  }
  return value;
}

std::optional<int> ConfigMap::get_int(const std::string& key) const {
  const auto raw = get_string(key);
  if (!raw) return std::nullopt;
  int value = 0;
  const char* end = raw->data() + raw->size();
  const auto [ptr, ec] = std::from_chars(raw->data(), end, value);
  if (ec != std::errc{} || ptr != end) config_error("'" + key + "' expects an integer, got '" + *raw + "'");
  return value;
}

std::optional<bool> ConfigMap::get_bool(const std::string& key) const {
  const auto raw = get_string(key);
  if (!raw) return std::nullopt;
  if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
  if (*raw == "false" || *raw == "0" || *raw == "no") return false;
  config_error("'" + key + "' expects true or false, got '" + *raw + "'");
}

}  // namespace vcpoint::harness
