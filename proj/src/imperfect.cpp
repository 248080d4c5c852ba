#include "cvbell/imperfect.hpp"

#include <cmath>
#include <limits>

#include "cvbell/errors.hpp"

namespace cvbell::imperfect {

using states::PhotonVariedState;

void validate(const FaultyGenerator& gen) {
  if (!(gen.r_actual > 0.0) || !(gen.r_label >= gen.r_actual))
    throw InvalidInput("faulty generator needs 0 < r_actual <= r_label");
}

namespace {

void validate(const SuppressionModel& sup) {
  if (!(sup.dispersion > 0.0)) throw InvalidInput("suppression dispersion must be positive");
  if (sup.cutoff < 0) throw InvalidInput("suppression cutoff must be non-negative");
}

void check_cutoff(const SuppressionModel& sup, int k) {
  validate(sup);
  if (k < 0) throw InvalidInput("photon number must be non-negative");
  if (sup.cutoff > k) throw InvalidInput("suppression cutoff exceeds the photon number");
}

double settings_weight(double a, double b, double a_ref, double b_ref) {
  return (a_ref * a + b_ref * b) / std::hypot(a_ref, b_ref);
}

}  // namespace

std::vector<double> suppression_weights(const SuppressionModel& model) {
  validate(model);
  std::vector<double> w(static_cast<std::size_t>(model.cutoff) + 1);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = static_cast<double>(i);
    w[i] = model.kind == SuppressionKind::Exponential ? std::exp(-d / model.dispersion)
                                                      : std::exp(-d * d / (model.dispersion * model.dispersion));
    total += w[i];
  }
  double tail = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    w[i] /= total;
    tail += w[i];
  }
  w[0] = 1.0 - tail;
  return w;
}

double chi_faulty(const FaultyGenerator& gen) {
  validate(gen);
  const double t = std::tanh(2.0 * gen.r_label);
  return 2.0 * (1.0 + std::tanh(2.0 * gen.r_actual) * t) / std::sqrt(1.0 + t * t);
}

double critical_rprime(double r_label) {
  if (!(r_label > 0.0)) throw InvalidInput("labeled squeezing must be positive");
  const double t = std::tanh(2.0 * r_label);
  // (sqrt(1+t^2) - 1)/t written without cancellation.
  return 0.5 * std::atanh(t / (std::sqrt(1.0 + t * t) + 1.0));
}

PhotonVariedState with_count(const PhotonVariedState& state, int count) {
  if (count < 0) throw InvalidInput("photon number must be non-negative");
  PhotonVariedState out = state;
  const bool second = state.op1 == 0 && state.op2 != 0;
  const int sign = (state.op1 < 0 || state.op2 < 0) ? -1 : 1;
  out.op1 = second ? 0 : sign * count;
  out.op2 = second ? sign * count : 0;
  return out;
}

double chi_faulty_added(const FaultyGenerator& gen, int k, const SeriesControl& ctrl) {
  return chi_imperfect_faulty(gen, k, SuppressionModel{}, ctrl);
}

double chi_imperfect_faulty(const FaultyGenerator& gen, int k, const SuppressionModel& sup,
                            const SeriesControl& ctrl) {
  validate(gen);
  check_cutoff(sup, k);
  const auto weights = suppression_weights(sup);
  const auto ref = pseudospin::kernel(PhotonVariedState::from_squeezing(gen.r_label, k, 0), ctrl);
  const double x_actual = states::squeezing_fraction(gen.r_actual);
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto cv = states::coefficients({x_actual, k - static_cast<int>(i), 0}, ctrl);
    const auto c = pseudospin::correlators(cv, ref.q1, ref.q2);
    sum += weights[i] * settings_weight(c.zz, c.xx, ref.sign, ref.K);
  }
  return 2.0 * sum;
}

double chi_imperfect_noisy(const noise::NoisyStateModel& model, int k, const SuppressionModel& sup,
                           const SeriesControl& ctrl) {
  if (model.policy != noise::Policy::KnownP) throw InvalidInput("imperfect noisy operations assume known p");
  check_cutoff(sup, k);
  const auto weights = suppression_weights(sup);
  auto target = model;
  target.pure = with_count(model.pure, k);
  const auto ref = noise::ab_of(target, ctrl);
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    auto component = model;
    component.pure = with_count(model.pure, k - static_cast<int>(i));
    const auto ab = noise::ab_at(component, ref.q1, ref.q2, ctrl);
    sum += weights[i] * settings_weight(ab.a_coeff, ab.b_coeff, ref.a_coeff, ref.b_coeff);
  }
  return 2.0 * sum;
}

double compact_imperfect_noisy(const noise::NoisyStateModel& model, int k, const SuppressionModel& sup,
                               const SeriesControl& ctrl) {
  check_cutoff(sup, k);
  const auto weights = suppression_weights(sup);
  auto target = model;
  target.policy = noise::Policy::KnownP;
  target.pure = with_count(model.pure, k);
  const auto ref = noise::ab_of(target, ctrl);
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    auto component = target;
    component.pure = with_count(model.pure, k - static_cast<int>(i));
    const auto ab = noise::ab_of(component, ctrl);
    const double term = i % 2 == 0 ? ref.a_coeff * ab.a_coeff + ref.b_coeff * ab.b_coeff
                                   : -ref.a_coeff * ab.a_coeff;
    sum += weights[i] * term;
  }
  return 2.0 * sum / std::hypot(ref.a_coeff, ref.b_coeff);
}

double compact_imperfect_faulty(const FaultyGenerator& gen, int k, const SuppressionModel& sup,
                                const SeriesControl& ctrl) {
  validate(gen);
  check_cutoff(sup, k);
  const auto weights = suppression_weights(sup);
  const double kk = pseudospin::kernel(PhotonVariedState::from_squeezing(gen.r_label, k, 0), ctrl).K;
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i % 2 == 1) {
      sum -= weights[i];
      continue;
    }
    const double kr =
        pseudospin::kernel(PhotonVariedState::from_squeezing(gen.r_actual, k - static_cast<int>(i), 0), ctrl).K;
    sum += weights[i] * (1.0 + kr * kk);
  }
  return 2.0 * sum / std::sqrt(1.0 + kk * kk);
}

std::optional<int> activation_threshold(const std::function<double(int)>& curve, int k_max) {
  for (int k = 0; k <= k_max; ++k) {
    if (curve(k) > 2.0) return k;
  }
  return std::nullopt;
}

}  // namespace cvbell::imperfect
