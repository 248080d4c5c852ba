#include "cvbell/approx.hpp"

#include <cmath>
#include <vector>

#include "cvbell/errors.hpp"
#include "cvbell/pseudospin.hpp"
#include "cvbell/states.hpp"

namespace cvbell::approx {

namespace {

void check(int k, double x) {
  if (k < 1) throw InvalidInput("approximate kernel needs k >= 1");
  if (!(x > 0.0 && x < 1.0)) throw InvalidInput("approximate kernel needs x in (0, 1)");
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double radical_approx(double X, double Y) {
  if (!(X > 0.0) || !(Y > 0.0)) throw InvalidInput("radical_approx needs positive arguments");
  const double s = X + Y;
  const double d2 = (X - Y) * (X - Y) / (s * s);
  return 0.5 * s * (1.0 - 0.5 * d2 - 0.125 * d2 * d2);
}

double k_approx_series(int k, double x, const SeriesControl& ctrl) {
  check(k, x);
  const double y = x * x;
  const double log_y = std::log(y);
  auto term = [&](std::size_t idx) {
    const double n = static_cast<double>(idx);
    double log_prod = n * log_y;
    for (int i = 2; i <= k; ++i) log_prod += std::log(2.0 * n + i);
    return std::exp(log_prod) * radical_approx(2.0 * n + 1.0, 2.0 * n + k + 1.0);
  };
  const double sum = specfun::sum_series(term, ctrl);
  return 2.0 / factorial(k) * std::pow(1.0 - x, 1.0 + k) * std::sqrt(x) * sum;
}

double k_approx(int k, double x, const SeriesControl& ctrl) {
  check(k, x);
  const double y = x * x;
  const double pre = std::sqrt(x) * std::pow(1.0 - x, 1.0 + k);
  if (k == 1) {
    const double bracket = (3.0 + y) / (2.0 * (1.0 - y) * (1.0 - y)) -
                           specfun::gauss_2f1(0.75, 1.0, 1.75, y, ctrl) / 12.0 -
                           specfun::lerch_phi(y, 3.0, 0.75, ctrl) / 1024.0;
    return 2.0 * pre * bracket;
  }
  if (k == 2) {
    const double bracket = 4.0 * (1.0 + y) / std::pow(1.0 - y, 3) - 0.5 / (1.0 - y) -
                           specfun::dilog(y, ctrl) / (32.0 * y);
    return pre * bracket;
  }
  return k_approx_series(k, x, ctrl);
}

double k_exact(int k, double x, const SeriesControl& ctrl) {
  if (k < 0) throw InvalidInput("photon number must be non-negative");
  if (k == 0) return 2.0 * std::sqrt(x) / (1.0 + x);
  return pseudospin::kernel(states::PhotonVariedState{x, k, 0}, ctrl).K;
}

CriticalResult largest_root(const std::function<double(double)>& f, double r_width) {
  constexpr int kPoints = 99;
  std::vector<double> xs(kPoints), vs(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    xs[i] = 0.01 + 0.98 * i / (kPoints - 1);
    vs[i] = f(xs[i]);
  }
  CriticalResult out;
  int last = -1;
  for (int i = 0; i + 1 < kPoints; ++i) {
    if ((vs[i] < 0.0) != (vs[i + 1] < 0.0)) {
      ++out.sign_changes;
      last = i;
    }
  }
  if (last < 0) throw ConvergenceError("no sign change on the scan grid");
  double lo = xs[last], hi = xs[last + 1];
  const bool lo_negative = vs[last] < 0.0;
  for (int it = 0; it < 200 && states::squeezing_of(hi) - states::squeezing_of(lo) > r_width; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.bracket_width = states::squeezing_of(hi) - states::squeezing_of(lo);
  if (out.bracket_width > r_width) throw ConvergenceError("bisection did not reach the requested bracket");
  out.x_critical = 0.5 * (lo + hi);
  out.r_critical = states::squeezing_of(out.x_critical);
  return out;
}

namespace {

CriticalResult critical_between(int k_hi, int k_lo, Series series, const SeriesControl& ctrl) {
  auto kernel = [&](int k, double x) {
    if (k == 0 || series == Series::Exact) return k_exact(k, x, ctrl);
    return k_approx(k, x, ctrl);
  };
  return largest_root([&](double x) { return kernel(k_hi, x) - kernel(k_lo, x); });
}

}  // namespace

CriticalResult critical_theorem1(Series series, const SeriesControl& ctrl) {
  return critical_between(1, 0, series, ctrl);
}

CriticalResult critical_prop1(Series series, const SeriesControl& ctrl) {
  return critical_between(2, 1, series, ctrl);
}

CriticalResult critical_prop2(Series series, const SeriesControl& ctrl) {
  return critical_between(4, 2, series, ctrl);
}

CriticalResult critical_prop3(Series series, const SeriesControl& ctrl) {
  return critical_between(3, 1, series, ctrl);
}

}  // namespace cvbell::approx
