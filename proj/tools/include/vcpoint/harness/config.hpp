#pragma once

// Flat key=value configuration with dotted section keys (vehicle.m, sim.h).
// Blank lines and lines starting with '#' are ignored.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace vcpoint::harness {

class ConfigMap {
 public:
  /// Throws Error{ConfigError} on malformed lines or duplicate keys.
  static ConfigMap parse(std::string_view text, const std::string& origin = "<string>");
  static ConfigMap load(const std::filesystem::path& path);

  /// Applies a "key=value" override, replacing any existing value.
  void set(std::string_view assignment);
  void set(const std::string& key, const std::string& value);

  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<int> get_int(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace vcpoint::harness
