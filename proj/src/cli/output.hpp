#pragma once

#include <string>
#include <vector>

namespace cvbell::cli {

enum class Format { Csv, Json };

struct Row {
  std::vector<double> params;
  std::string series;
  double value = 0.0;
};

/// Long-format dataset: one row per (parameters, series, value).
struct Dataset {
  std::vector<std::string> param_names;
  std::string value_name = "chi";
  std::vector<Row> rows;
};

/// Header `param_1,...,param_n,series,<value_name>`, numbers as %.12g.
std::string to_csv(const Dataset& data);
/// Array of records in column order.
std::string to_json(const Dataset& data);
std::string render(const Dataset& data, Format format);

std::string format_number(double v);

}  // namespace cvbell::cli
