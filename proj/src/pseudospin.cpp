#include "cvbell/pseudospin.hpp"

#include <cmath>

#include "cvbell/errors.hpp"

namespace cvbell::pseudospin {

int first_level(int q) {
  if (q >= 0) return q;
  return ((q % 2) + 2) % 2;
}

int z_value(int level, int q) {
  const int start = first_level(q);
  if (level < start) return 0;
  return ((level - start) % 2 == 0) ? -1 : 1;
}

bool pair_start(int level, int q) {
  const int start = first_level(q);
  return level >= start && (level - start) % 2 == 0;
}

Correlators correlators(const CoefficientVector& cv, int q1, int q2) {
  Correlators out;
  const auto& a = cv.entries;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const int m1 = cv.first + static_cast<int>(j);
    const int m2 = m1 + cv.offset;
    out.zz += a[j] * a[j] * z_value(m1, q1) * z_value(m2, q2);
    // S+ x S+ + S- x S- links |m1, m2> with |m1+1, m2+1>.
    if (j + 1 < a.size() && pair_start(m1, q1) && pair_start(m2, q2)) out.xx += 2.0 * a[j] * a[j + 1];
  }
  return out;
}

KernelForm kernel(const CoefficientVector& cv) {
  // Adjacent-pair sums split by the parity of the mode-1 photon number.
  double sums[2] = {0.0, 0.0};
  for (std::size_t j = 0; j + 1 < cv.entries.size(); ++j) {
    const int m1 = cv.first + static_cast<int>(j);
    sums[m1 % 2] += cv.entries[j] * cv.entries[j + 1];
  }
  const int q1 = sums[1] > sums[0] ? 1 : 0;
  const int q2 = ((q1 + cv.offset) % 2 + 2) % 2;

  KernelForm out;
  out.K = 2.0 * sums[q1];
  out.q1 = q1;
  out.q2 = q2;
  const Correlators c = correlators(cv, q1, q2);
  out.sign = c.zz < 0.0 ? -1 : 1;
  return out;
}

KernelForm kernel(const PhotonVariedState& state, const SeriesControl& ctrl) {
  return kernel(states::coefficients(state, ctrl));
}

double chi_max(double K) { return 2.0 * std::sqrt(1.0 + K * K); }

double chi_max(const KernelForm& kernel) { return chi_max(kernel.K); }

BellSettings optimal_settings(const KernelForm& kernel) {
  const double theta = std::atan2(kernel.K, 1.0);
  BellSettings s;
  s.theta_a = kernel.sign > 0 ? 0.0 : M_PI;
  s.theta_a_prime = M_PI / 2.0;
  s.theta_b = theta;
  s.theta_b_prime = -theta;
  s.q1 = kernel.q1;
  s.q2 = kernel.q2;
  return s;
}

double correlation(const Correlators& c, double theta_a, double theta_b) {
  return c.zz * std::cos(theta_a) * std::cos(theta_b) + c.xx * std::sin(theta_a) * std::sin(theta_b);
}

double correlation(const PhotonVariedState& state, double theta_a, double theta_b, int q1, int q2,
                   const SeriesControl& ctrl) {
  return correlation(correlators(states::coefficients(state, ctrl), q1, q2), theta_a, theta_b);
}

double bell_chsh(const Correlators& c, const BellSettings& s) {
  return correlation(c, s.theta_a, s.theta_b) + correlation(c, s.theta_a, s.theta_b_prime) +
         correlation(c, s.theta_a_prime, s.theta_b) - correlation(c, s.theta_a_prime, s.theta_b_prime);
}

double bell_chsh(const PhotonVariedState& state, const BellSettings& settings, const SeriesControl& ctrl) {
  return bell_chsh(correlators(states::coefficients(state, ctrl), settings.q1, settings.q2), settings);
}

double gain(double chi_new, double chi_ref) {
  if (chi_ref == 0.0) throw InvalidInput("gain: reference value must be non-zero");
  return (chi_new - chi_ref) / chi_ref;
}

}  // namespace cvbell::pseudospin
