#include "cvbell/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell::specfun {
namespace {

// Stateful form of the SeriesControl stopping rule; feed terms in order.
class TailRule {
 public:
  explicit TailRule(const SeriesControl& ctrl) : ctrl_(ctrl) {}

  bool converged(double term) {
    const double mag = std::fabs(term);
    bool stop = false;
    if (have_prev_) {
      double rho;
      if (prev_ == 0.0) {
        rho = (mag == 0.0) ? 0.0 : INFINITY;
      } else {
        rho = mag / prev_;
      }
      stop = rho < 1.0 && mag <= ctrl_.tolerance * (1.0 - rho);
    }
    prev_ = mag;
    have_prev_ = true;
    return stop;
  }

 private:
  const SeriesControl& ctrl_;
  double prev_ = 0.0;
  bool have_prev_ = false;
};

[[noreturn]] void fail_convergence(const char* what, const SeriesControl& ctrl) {
  throw ConvergenceError(std::string(what) + ": no convergence within " +
                         std::to_string(ctrl.max_terms) + " terms");
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && std::floor(v) == v; }

}  // namespace

void validate(const SeriesControl& ctrl) {
  if (!(ctrl.tolerance > 0.0)) throw InvalidInput("SeriesControl: tolerance must be positive");
  if (ctrl.max_terms < 1) throw InvalidInput("SeriesControl: max_terms must be >= 1");
}

double sum_series(const std::function<double(std::size_t)>& term, const SeriesControl& ctrl,
                  std::size_t start) {
  validate(ctrl);
  TailRule rule(ctrl);
  double sum = 0.0;
  for (std::size_t i = 0; i < ctrl.max_terms; ++i) {
    const double t = term(start + i);
    sum += t;
    if (rule.converged(t)) return sum;
  }
  fail_convergence("sum_series", ctrl);
}

std::array<double, 2> sum_series_pair(const std::function<std::array<double, 2>(std::size_t)>& terms,
                                      const SeriesControl& ctrl) {
  validate(ctrl);
  TailRule first(ctrl), second(ctrl);
  std::array<double, 2> sum{0.0, 0.0};
  for (std::size_t i = 0; i < ctrl.max_terms; ++i) {
    const auto t = terms(i);
    sum[0] += t[0];
    sum[1] += t[1];
    const bool a = first.converged(t[0]);
    const bool b = second.converged(t[1]);
    if (a && b) return sum;
  }
  fail_convergence("sum_series_pair", ctrl);
}

double gauss_2f1(double a, double b, double c, double x, const SeriesControl& ctrl) {
  validate(ctrl);
  if (is_nonpositive_integer(c)) throw InvalidInput("gauss_2f1: c must not be zero or a negative integer");
  if (!(std::fabs(x) < 1.0)) throw InvalidInput("gauss_2f1: requires |x| < 1");

  TailRule rule(ctrl);
  double term = 1.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < ctrl.max_terms; ++n) {
    sum += term;
    if (rule.converged(term)) return sum;
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
  }
  fail_convergence("gauss_2f1", ctrl);
}

double lerch_phi(double z, double s, double a, const SeriesControl& ctrl) {
  validate(ctrl);
  if (!(a > 0.0)) throw InvalidInput("lerch_phi: requires a > 0");
  if (!(z >= 0.0 && z < 1.0)) throw InvalidInput("lerch_phi: requires 0 <= z < 1");

  TailRule rule(ctrl);
  double zn = 1.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < ctrl.max_terms; ++n) {
    const double term = zn * std::pow(static_cast<double>(n) + a, -s);
    sum += term;
    if (rule.converged(term)) return sum;
    zn *= z;
  }
  fail_convergence("lerch_phi", ctrl);
}

namespace {

double dilog_series(double x, const SeriesControl& ctrl) {
  TailRule rule(ctrl);
  double xn = x;
  double sum = 0.0;
  for (std::size_t n = 1; n <= ctrl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double term = xn / (dn * dn);
    sum += term;
    if (rule.converged(term)) return sum;
    xn *= x;
  }
  fail_convergence("dilog", ctrl);
}

}  // namespace

double dilog(double x, const SeriesControl& ctrl) {
  validate(ctrl);
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidInput("dilog: requires 0 <= x <= 1");
  constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  if (x == 0.0) return 0.0;
  if (x == 1.0) return zeta2;
  // Euler reflection keeps the series argument at or below 1/2.
  if (x > 0.5) return zeta2 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x, ctrl);
  return dilog_series(x, ctrl);
}

double jacobi_theta(ThetaKind kind, double q, const SeriesControl& ctrl) {
  validate(ctrl);
  if (!(q >= 0.0 && q < 1.0)) throw InvalidInput("jacobi_theta: requires 0 <= q < 1");
  if (q == 0.0) return 1.0;

  const double sign = kind == ThetaKind::Four ? -1.0 : 1.0;
  const double lq = std::log(q);
  TailRule rule(ctrl);
  double sum = 0.0;
  double alt = 1.0;
  for (std::size_t n = 1; n <= ctrl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    alt *= sign;
    const double term = 2.0 * alt * std::exp(dn * dn * lq);
    sum += term;
    if (rule.converged(term)) return 1.0 + sum;
  }
  fail_convergence("jacobi_theta", ctrl);
}

}  // namespace cvbell::specfun
