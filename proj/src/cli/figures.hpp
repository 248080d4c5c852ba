#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "cvbell/specfun.hpp"

namespace cvbell::cli {

/// A dataset row whose value is computed later.
struct Job {
  std::vector<double> params;
  std::string series;
  std::function<double()> compute;
};

/// Evaluates jobs concurrently and assembles rows in job order. Rethrows the
/// first failure.
Dataset run_jobs(std::vector<std::string> param_names, std::vector<Job> jobs, bool parallel = true);

/// Built-in parameters of figure `id` (1..6).
Config figure_defaults(int id);
Dataset figure(int id, const Config& config, const specfun::SeriesControl& ctrl);

/// Table I: gain percentages for r in {0.2, 0.5, 0.8, 1.2}, k in {2, 5, 10, 15}.
Dataset table1(const specfun::SeriesControl& ctrl);

/// Generic grid sweep driven by a key = value file.
Config sweep_defaults();
Dataset sweep(const Config& config, const specfun::SeriesControl& ctrl);

std::string label(const std::string& name, double v);

}  // namespace cvbell::cli
