#pragma once

#include <functional>

#include "cvbell/specfun.hpp"

namespace cvbell::approx {

using specfun::SeriesControl;

/// sqrt(XY) ~ S/2 [1 - D^2/(2 S^2) - D^4/(8 S^4)], S = X + Y, D = X - Y.
/// Overestimates sqrt(XY) whenever X, Y > 0.
double radical_approx(double X, double Y);

/// Kernel of the (k, 0) state with every sqrt((2n+1)(2n+k+1)) in its series
/// replaced by radical_approx. Closed forms for k = 1, 2; any k >= 1 accepted.
double k_approx(int k, double x, const SeriesControl& ctrl = {});

/// The same quantity summed term by term, for any k >= 1.
double k_approx_series(int k, double x, const SeriesControl& ctrl = {});

/// Kernel of the (k, 0) state without approximation; k = 0 gives tanh 2r.
double k_exact(int k, double x, const SeriesControl& ctrl = {});

enum class Series { Approximated, Exact };

struct CriticalResult {
  double x_critical = 0.0;
  double r_critical = 0.0;
  double bracket_width = 0.0;  // in r
  int sign_changes = 0;        // on the scan grid
};

/// Largest root in x of f on (0.01, 0.99): a 99-point scan followed by
/// bisection until the bracket is at most `r_width` wide in r.
/// Throws ConvergenceError if f never changes sign.
CriticalResult largest_root(const std::function<double(double)>& f, double r_width = 1e-10);

/// K_(1,0) = K_(0,0): one added photon stops helping above this squeezing.
CriticalResult critical_theorem1(Series series, const SeriesControl& ctrl = {});
/// K_(2,0) = K_(1,0).
CriticalResult critical_prop1(Series series, const SeriesControl& ctrl = {});
/// K_(4,0) = K_(2,0).
CriticalResult critical_prop2(Series series, const SeriesControl& ctrl = {});
/// K_(3,0) = K_(1,0).
CriticalResult critical_prop3(Series series, const SeriesControl& ctrl = {});

}  // namespace cvbell::approx
