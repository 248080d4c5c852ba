#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <limits>
#include <vector>

namespace cvbell::sweep {

/// One evaluated cell: a value, or the exception its evaluation raised.
struct CellResult {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::exception_ptr error;

  bool ok() const { return !error; }
};

using CellFn = std::function<double(std::size_t)>;

/// Evaluates fn(0), ..., fn(count - 1) in order on the calling thread.
std::vector<CellResult> map_serial(std::size_t count, const CellFn& fn);

/// Same cells evaluated with OpenMP; results are stored by index, so the
/// output matches map_serial regardless of scheduling. threads <= 0 uses the
/// OpenMP default.
std::vector<CellResult> map_parallel(std::size_t count, const CellFn& fn, int threads = 0);

/// Rethrows the first (lowest-index) captured exception, if any.
void rethrow_first(const std::vector<CellResult>& cells);

std::vector<double> values(const std::vector<CellResult>& cells);

int max_threads();

}  // namespace cvbell::sweep
