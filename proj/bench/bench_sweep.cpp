// Serial vs OpenMP sweep timing over oracle and closed-form workloads.
// Usage: bench_sweep [cells] [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cvbell/imperfect.hpp"
#include "cvbell/oracle.hpp"
#include "cvbell/sweep.hpp"

using namespace cvbell;

namespace {

double time_map(const char* name, std::size_t cells, const sweep::CellFn& fn, int threads) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  const auto serial = sweep::values(sweep::map_serial(cells, fn));
  const double ts = std::chrono::duration<double>(Clock::now() - t0).count();
  t0 = Clock::now();
  const auto parallel = sweep::values(sweep::map_parallel(cells, fn, threads));
  const double tp = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%-10s cells %5zu  serial %8.3f s  parallel %8.3f s  speedup %5.2f  identical %s\n", name, cells, ts,
              tp, ts / tp, serial == parallel ? "yes" : "no");
  return ts / tp;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t cells = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 64;
  const int threads = argc > 2 ? std::atoi(argv[2]) : 0;
  std::printf("threads %d\n", threads > 0 ? threads : sweep::max_threads());

  // Brute-force oracle: truncated density matrices and correlation-matrix bound.
  time_map("oracle", cells, [](std::size_t i) {
    const double r = 0.1 + 0.9 * static_cast<double>(i % 16) / 15.0;
    const int k = static_cast<int>(i / 16) % 4;
    const noise::NoisyStateModel m{0.2, states::PhotonVariedState::from_squeezing(r, k, 0),
                                   noise::LocalNoise{noise::thermal_dist(2.0), noise::thermal_dist(3.0)}};
    return oracle::chi_eigen(oracle::build_noisy(m));
  }, threads);

  // Closed-form imperfect operations on a (lambda, k) grid.
  time_map("imperfect", cells * 16, [](std::size_t i) {
    const double lambda = 0.05 + 0.05 * static_cast<double>(i % 40);
    const int k = 1 + static_cast<int>(i / 40) % 25;
    return imperfect::chi_imperfect_faulty({0.75, 0.13}, k, {imperfect::SuppressionKind::Exponential, lambda, k});
  }, threads);
  return 0;
}
