#include "cvbell/states.hpp"

#include <cmath>
#include <string>

#include "cvbell/errors.hpp"

namespace cvbell::states {
namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Canonical description after sign handling and the k >= l swap for
// subtraction. The generated vector lives in swapped modes when `swapped`.
struct Canonical {
  bool subtraction = false;
  bool swapped = false;
  int k = 0;
  int l = 0;
};

Canonical canonicalize(const PhotonVariedState& s) {
  Canonical c;
  if (s.is_addition()) {
    c.k = s.op1;
    c.l = s.op2;
    return c;
  }
  c.subtraction = true;
  c.k = -s.op1;
  c.l = -s.op2;
  if (c.l > c.k) {
    std::swap(c.k, c.l);
    c.swapped = true;
  }
  return c;
}

double normalizer(const Canonical& c, double x, const SeriesControl& ctrl) {
  if (c.subtraction) return specfun::gauss_2f1(c.k + 1.0, c.k + 1.0, 1.0 + c.k - c.l, x, ctrl);
  return specfun::gauss_2f1(c.k + 1.0, c.l + 1.0, 1.0, x, ctrl);
}

}  // namespace

PhotonVariedState PhotonVariedState::from_squeezing(double r, int op1, int op2) {
  if (!(r >= 0.0)) throw InvalidInput("squeezing must be non-negative");
  return {squeezing_fraction(r), op1, op2};
}

bool operator==(const PhotonVariedState& a, const PhotonVariedState& b) {
  return a.x == b.x && a.op1 == b.op1 && a.op2 == b.op2;
}

double squeezing_fraction(double r) {
  const double t = std::tanh(r);
  return t * t;
}

double squeezing_of(double x) { return std::atanh(std::sqrt(x)); }

void validate(const PhotonVariedState& s) {
  if (!(s.x >= 0.0 && s.x < 1.0))
    throw InvalidInput("PhotonVariedState: x must lie in [0, 1), got " + std::to_string(s.x));
  if (!s.is_addition() && !s.is_subtraction())
    throw InvalidInput("PhotonVariedState: mixed addition/subtraction (" + std::to_string(s.op1) +
                       ", " + std::to_string(s.op2) + ") is not supported");
}

double CoefficientVector::norm_squared() const {
  double sum = 0.0;
  for (double c : entries) sum += c * c;
  return sum;
}

double CoefficientVector::at_mode1(int n) const {
  const int j = n - first;
  if (j < 0 || j >= static_cast<int>(entries.size())) return 0.0;
  return entries[static_cast<std::size_t>(j)];
}

CoefficientVector coefficients(const PhotonVariedState& state, const SeriesControl& ctrl) {
  validate(state);
  specfun::validate(ctrl);
  const Canonical c = canonicalize(state);
  const double x = state.x;

  CoefficientVector out;
  if (c.subtraction) {
    out.first = 0;
    out.offset = c.k - c.l;
  } else {
    out.first = c.k;
    out.offset = c.l - c.k;
  }

  if (x == 0.0) {
    out.entries = {1.0};
  } else {
    const double norm = normalizer(c, x, ctrl);
    // Amplitude ratios a_{j+1}/a_j from the closed forms, seeded by a_0 = 1/sqrt(F).
    auto ratio_sq = [&](std::size_t j) {
      const double n = static_cast<double>(j);
      if (c.subtraction) {
        const double m = n + c.k + 1.0;  // photon count before subtraction, next term
        return x * m * m / ((m - c.k) * (m - c.l));
      }
      return x * (n + c.k + 1.0) * (n + c.l + 1.0) / ((n + 1.0) * (n + 1.0));
    };

    double a = 1.0 / std::sqrt(norm);
    double mass = 0.0;
    double prev = 0.0;
    bool done = false;
    for (std::size_t j = 0; j < ctrl.max_terms; ++j) {
      const double w = a * a;
      out.entries.push_back(a);
      mass += w;
      if (j > 0 && prev > 0.0) {
        const double rho = w / prev;
        if (rho < 1.0 && w <= ctrl.tolerance * (1.0 - rho)) {
          done = true;
          break;
        }
      }
      prev = w;
      a *= std::sqrt(ratio_sq(j));
    }
    if (!done)
      throw ConvergenceError("coefficients: tail not below tolerance within " +
                             std::to_string(ctrl.max_terms) + " terms");
    out.deficit = 1.0 - mass;
    const double scale = 1.0 / std::sqrt(mass);
    for (double& v : out.entries) v *= scale;
  }

  if (c.swapped) {
    // Generated as sum a_j |j, j + d>; relabel modes to sum a_j |j + d, j>.
    out.first = out.first + out.offset;
    out.offset = -out.offset;
  }
  return out;
}

double closed_form_coefficient(const PhotonVariedState& state, int n, const SeriesControl& ctrl) {
  validate(state);
  const Canonical c = canonicalize(state);
  const double x = state.x;
  if (!c.subtraction) {
    if (n < 0) return 0.0;
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    const double log_f = std::log(specfun::gauss_2f1(c.k + 1.0, c.l + 1.0, 1.0, x, ctrl));
    const double lg = 0.5 * n * std::log(x) + 0.5 * (log_binomial(n + c.k, c.k) + log_binomial(n + c.l, c.l)) -
                      0.5 * log_f;
    return std::exp(lg);
  }
  if (n < c.k) return 0.0;
  if (x == 0.0) return n == c.k ? 1.0 : 0.0;
  const double log_f = std::log(specfun::gauss_2f1(c.k + 1.0, c.k + 1.0, 1.0 + c.k - c.l, x, ctrl));
  const double lg = 0.5 * (n - c.k) * std::log(x) +
                    0.5 * (log_binomial(n, c.k) + log_binomial(n, c.l) - log_binomial(c.k, c.l)) - 0.5 * log_f;
  return std::exp(lg);
}

PhotonVariedState equivalent_addition_form(const PhotonVariedState& state) {
  validate(state);
  if (state.op1 != 0 && state.op2 != 0)
    throw InvalidInput("equivalent_addition_form: requires a single-mode operation");
  if (state.op1 < 0) return {state.x, 0, -state.op1};
  if (state.op2 < 0) return {state.x, -state.op2, 0};
  return state;
}

double entanglement_entropy(const PhotonVariedState& state, const SeriesControl& ctrl) {
  const CoefficientVector cv = coefficients(state, ctrl);
  double h = 0.0;
  for (double c : cv.entries) {
    const double w = c * c;
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

}  // namespace cvbell::states
