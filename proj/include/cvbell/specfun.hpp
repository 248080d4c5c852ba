#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace cvbell::specfun {

/// Truncation policy shared by every series in the library.
///
/// A sum stops at term n once |t_n| <= tolerance * (1 - rho), where
/// rho = |t_n / t_{n-1}| < 1; i.e. the current term is below tolerance, the
/// terms are decreasing, and the geometric estimate of the remaining tail is
/// below tolerance. Hitting max_terms first raises ConvergenceError.
struct SeriesControl {
  double tolerance = 1e-10;
  std::size_t max_terms = 2'000'000;

  static SeriesControl tight() { return {1e-14, 2'000'000}; }
};

void validate(const SeriesControl& ctrl);

/// Sums term(n) for n = start, start+1, ... under the SeriesControl rule.
double sum_series(const std::function<double(std::size_t)>& term, const SeriesControl& ctrl,
                  std::size_t start = 0);

/// Sums two series over a common index range, stopping at the first n where
/// both satisfy the SeriesControl rule.
std::array<double, 2> sum_series_pair(const std::function<std::array<double, 2>(std::size_t)>& terms,
                                      const SeriesControl& ctrl);

/// Gauss hypergeometric 2F1(a, b; c; x) for real |x| < 1.
double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctrl = {});

/// Lerch transcendent Phi(z, s, a) = sum z^n / (n + a)^s, 0 <= z < 1, a > 0.
double lerch_phi(double z, double s, double a, const SeriesControl& ctrl = {});

/// Dilogarithm Li2(x) on [0, 1].
double dilog(double x, const SeriesControl& ctrl = {});

/// Jacobi theta functions at zero phase, theta_3(0, q) and theta_4(0, q),
/// with nome q in [0, 1).
enum class ThetaKind { Three = 3, Four = 4 };
double jacobi_theta(ThetaKind kind, double q, const SeriesControl& ctrl = {});

}  // namespace cvbell::specfun
