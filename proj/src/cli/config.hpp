#pragma once

#include <map>
#include <string>
#include <vector>

namespace cvbell::cli {

/// Flat `key = value` configuration; `#` starts a comment. Later assignments
/// replace earlier ones.
class Config {
 public:
  Config() = default;
  explicit Config(std::map<std::string, std::string> defaults) : values_(std::move(defaults)) {}

  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  /// Applies `key=value` overrides; unknown keys are rejected when `strict`.
  void merge(const Config& other, bool strict);
  void set(const std::string& assignment, bool strict);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& raw(const std::string& key) const;
  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  /// Comma-separated items; an item `lo:hi` expands to integers, `lo:step:hi`
  /// to reals.
  std::vector<double> reals(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace cvbell::cli
