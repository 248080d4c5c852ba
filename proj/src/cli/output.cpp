#include "cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace cvbell::cli {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string to_csv(const Dataset& data) {
  std::string out;
  for (const auto& name : data.param_names) out += name + ",";
  out += "series," + data.value_name + "\n";
  for (const auto& row : data.rows) {
    for (double p : row.params) out += format_number(p) + ",";
    out += row.series + "," + format_number(row.value) + "\n";
  }
  return out;
}

namespace {

nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

std::string to_json(const Dataset& data) {
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : data.rows) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < data.param_names.size(); ++i) rec[data.param_names[i]] = number(row.params[i]);
    rec["series"] = row.series;
    rec[data.value_name] = number(row.value);
    records.push_back(std::move(rec));
  }
  return records.dump(2) + "\n";
}

std::string render(const Dataset& data, Format format) {
  return format == Format::Csv ? to_csv(data) : to_json(data);
}

}  // namespace cvbell::cli
