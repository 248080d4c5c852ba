#include "cvbell/sweep.hpp"

#include <omp.h>

namespace cvbell::sweep {

namespace {

CellResult evaluate(const CellFn& fn, std::size_t i) {
  CellResult cell;
  try {
    cell.value = fn(i);
  } catch (...) {
    cell.error = std::current_exception();
  }
  return cell;
}

}  // namespace

std::vector<CellResult> map_serial(std::size_t count, const CellFn& fn) {
  std::vector<CellResult> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = evaluate(fn, i);
  return out;
}

std::vector<CellResult> map_parallel(std::size_t count, const CellFn& fn, int threads) {
  std::vector<CellResult> out(count);
  const auto n = static_cast<long long>(count);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (long long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = evaluate(fn, static_cast<std::size_t>(i));
  return out;
}

void rethrow_first(const std::vector<CellResult>& cells) {
  for (const auto& c : cells) {
    if (c.error) std::rethrow_exception(c.error);
  }
}

std::vector<double> values(const std::vector<CellResult>& cells) {
  rethrow_first(cells);
  std::vector<double> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(c.value);
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace cvbell::sweep
