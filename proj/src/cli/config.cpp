#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cvbell/errors.hpp"

namespace cvbell::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_real(const std::string& key, const std::string& text) {
  if (text == "inf") return INFINITY;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput("config key '" + key + "': not a number: '" + text + "'");
}

std::pair<std::string, std::string> assignment(const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw InvalidInput("config line without '=': " + line);
  auto key = trim(line.substr(0, eq));
  if (key.empty()) throw InvalidInput("config line without key: " + line);
  return {key, trim(line.substr(eq + 1))};
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config c;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto [k, v] = assignment(line);
    c.values_[k] = v;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::merge(const Config& other, bool strict) {
  for (const auto& [k, v] : other.values_) {
    if (strict && !has(k)) throw InvalidInput("unknown config key '" + k + "'");
    values_[k] = v;
  }
}

void Config::set(const std::string& text, bool strict) {
  auto [k, v] = assignment(text);
  if (strict && !has(k)) throw InvalidInput("unknown config key '" + k + "'");
  values_[k] = v;
}

const std::string& Config::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidInput("missing config key '" + key + "'");
  return it->second;
}

double Config::real(const std::string& key) const { return to_real(key, raw(key)); }

int Config::integer(const std::string& key) const {
  const double v = real(key);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw InvalidInput("config key '" + key + "': not an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::reals(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split(raw(key), ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(to_real(key, parts[0]));
    } else if (parts.size() == 2 || parts.size() == 3) {
      const double lo = to_real(key, parts[0]);
      const double hi = to_real(key, parts.back());
      const double step = parts.size() == 3 ? to_real(key, parts[1]) : 1.0;
      if (!(step > 0.0) || hi < lo) throw InvalidInput("config key '" + key + "': bad range " + item);
      const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      for (long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    } else {
      throw InvalidInput("config key '" + key + "': bad range " + item);
    }
  }
  if (out.empty()) throw InvalidInput("config key '" + key + "': empty list");
  return out;
}

std::vector<int> Config::integers(const std::string& key) const {
  std::vector<int> out;
  for (double v : reals(key)) {
    if (v != std::floor(v)) throw InvalidInput("config key '" + key + "': not an integer list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace cvbell::cli
