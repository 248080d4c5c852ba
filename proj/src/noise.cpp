#include "cvbell/noise.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "cvbell/errors.hpp"

namespace cvbell::noise {

namespace {

double binomial(std::size_t n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b *= static_cast<double>(n - static_cast<std::size_t>(k) + i) / i;
  return b;
}

double sum_over(const Distribution& dist, const std::function<double(std::size_t)>& term,
                const SeriesControl& ctrl) {
  if (dist.support()) {
    double s = 0.0;
    for (std::size_t n = 0; n < *dist.support(); ++n) s += term(n);
    return s;
  }
  return specfun::sum_series(term, ctrl);
}

double expected_z(const Distribution& dist, int shift, int q, const SeriesControl& ctrl) {
  return dist.expectation(
      [shift, q](std::size_t n) { return static_cast<double>(pseudospin::z_value(static_cast<int>(n) + shift, q)); },
      ctrl);
}

int single_operation(const PhotonVariedState& s) {
  if (s.op1 != 0 && s.op2 != 0)
    throw InvalidInput("noisy models support a photon operation on one mode only");
  return s.op1 != 0 ? s.op1 : s.op2;
}

}  // namespace

Distribution::Distribution(WeightFn weight, std::optional<std::size_t> support)
    : weight_(std::make_shared<const WeightFn>(std::move(weight))), support_(support) {}

Distribution Distribution::from_weights(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput("distribution weights must be finite and non-negative");
    total += w;
  }
  if (total <= 0.0) throw InvalidInput("distribution has zero total mass");
  for (double& w : weights) w /= total;
  const std::size_t n = weights.size();
  return Distribution([w = std::move(weights)](std::size_t i) { return i < w.size() ? w[i] : 0.0; }, n);
}

Distribution Distribution::point_mass(std::size_t n) {
  std::vector<double> w(n + 1, 0.0);
  w[n] = 1.0;
  return from_weights(std::move(w));
}

Distribution Distribution::uniform(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw InvalidInput("uniform distribution needs lo <= hi");
  std::vector<double> w(hi + 1, 0.0);
  for (std::size_t i = lo; i <= hi; ++i) w[i] = 1.0;
  return from_weights(std::move(w));
}

double Distribution::operator()(std::size_t n) const {
  if (support_ && n >= *support_) return 0.0;
  return (*weight_)(n);
}

double Distribution::expectation(const std::function<double(std::size_t)>& f, const SeriesControl& ctrl) const {
  // Normalizing by the mass summed over the same terms removes the truncation
  // deficit, so e.g. E[1] is 1 to rounding.
  std::array<double, 2> s{0.0, 0.0};
  if (support_) {
    for (std::size_t n = 0; n < *support_; ++n) {
      const double w = (*this)(n);
      s[0] += f(n) * w;
      s[1] += w;
    }
  } else {
    s = specfun::sum_series_pair(
        [&](std::size_t n) {
          const double w = (*this)(n);
          return std::array<double, 2>{f(n) * w, w};
        },
        ctrl);
  }
  if (!(s[1] > 0.0)) throw InvalidInput("distribution has zero total mass");
  return s[0] / s[1];
}

double Distribution::total(const SeriesControl& ctrl) const {
  return sum_over(*this, [&](std::size_t n) { return (*this)(n); }, ctrl);
}

std::vector<double> Distribution::materialize(std::size_t count) const {
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = (*this)(n);
  return out;
}

Distribution thermal_dist(double beta) {
  if (!(beta > 0.0)) throw InvalidInput("thermal distribution needs beta > 0");
  if (std::isinf(beta)) return Distribution::point_mass(0);
  const double y = std::exp(-beta);
  const double norm = -std::expm1(-beta);
  return Distribution([=](std::size_t n) { return norm * std::pow(y, static_cast<double>(n)); }, std::nullopt);
}

Distribution gaussian_dist(double sigma, const SeriesControl& ctrl) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("gaussian distribution needs finite sigma > 0");
  const double q = std::exp(-1.0 / (sigma * sigma));
  const double norm = 2.0 / (1.0 + specfun::jacobi_theta(specfun::ThetaKind::Three, q, ctrl));
  const double inv = 1.0 / (sigma * sigma);
  return Distribution(
      [=](std::size_t n) {
        const double d = static_cast<double>(n);
        return norm * std::exp(-d * d * inv);
      },
      std::nullopt);
}

double parity_mean(const Distribution& dist, const SeriesControl& ctrl) {
  return dist.expectation([](std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; }, ctrl);
}

Distribution transform_noise_add(const Distribution& mu, int k, const SeriesControl& ctrl) {
  if (k < 0) throw InvalidInput("photon number must be non-negative");
  if (k == 0) return mu;
  auto raw = [mu, k](std::size_t n) { return mu(n) * binomial(n + static_cast<std::size_t>(k), k); };
  const double z = sum_over(mu, raw, ctrl);
  if (!(z > 0.0) || !std::isfinite(z)) throw ConvergenceError("photon-added noise is not normalizable");
  return Distribution([raw, z](std::size_t n) { return raw(n) / z; }, mu.support());
}

Distribution transform_noise_sub(const Distribution& mu, int k, const SeriesControl& ctrl) {
  if (k < 0) throw InvalidInput("photon number must be non-negative");
  if (k == 0) return mu;
  const auto uk = static_cast<std::size_t>(k);
  std::optional<std::size_t> support;
  if (mu.support()) {
    if (*mu.support() <= uk) throw InvalidInput("photon subtraction annihilates the noise");
    support = *mu.support() - uk;
  }
  auto raw = [mu, k, uk](std::size_t n) { return mu(n + uk) * binomial(n + uk, k); };
  const double z = support ? [&] {
    double s = 0.0;
    for (std::size_t n = 0; n < *support; ++n) s += raw(n);
    return s;
  }()
                           : specfun::sum_series(raw, ctrl);
  if (z == 0.0) throw InvalidInput("photon subtraction annihilates the noise");
  if (!std::isfinite(z)) throw ConvergenceError("photon-subtracted noise is not normalizable");
  return Distribution([raw, z](std::size_t n) { return raw(n) / z; }, support);
}

void validate(const NoisyStateModel& model) {
  if (!(model.p >= 0.0 && model.p <= 1.0)) throw InvalidInput("mixing probability must lie in [0, 1]");
  states::validate(model.pure);
  single_operation(model.pure);
}

TransformedNoise transform_noise(const NoisyStateModel& model, const SeriesControl& ctrl) {
  validate(model);
  const int op1 = model.pure.op1;
  const int op2 = model.pure.op2;
  auto apply = [&](const Distribution& d, int op) {
    return op >= 0 ? transform_noise_add(d, op, ctrl) : transform_noise_sub(d, -op, ctrl);
  };
  if (const auto* local = std::get_if<LocalNoise>(&model.noise)) {
    return {TransformedNoise::Local{apply(local->mu, op1), apply(local->nu, op2), std::max(op1, 0),
                                    std::max(op2, 0)}};
  }
  const auto& corr = std::get<CorrelatedNoise>(model.noise);
  // A single-mode operation on sum c_n |n, n><n, n| shifts the two modes apart.
  if (op1 != 0) {
    return {TransformedNoise::Correlated{apply(corr.c, op1), op1 > 0 ? op1 : 0, op1 > 0 ? 0 : -op1}};
  }
  return {TransformedNoise::Correlated{apply(corr.c, op2), op2 > 0 ? 0 : -op2, op2 > 0 ? op2 : 0}};
}

double noise_zz(const TransformedNoise& noise, int q1, int q2, const SeriesControl& ctrl) {
  if (const auto* local = std::get_if<TransformedNoise::Local>(&noise.form)) {
    return expected_z(local->mu, local->shift1, q1, ctrl) * expected_z(local->nu, local->shift2, q2, ctrl);
  }
  const auto& corr = std::get<TransformedNoise::Correlated>(noise.form);
  return corr.c.expectation(
      [&](std::size_t n) {
        const int level = static_cast<int>(n);
        return static_cast<double>(pseudospin::z_value(level + corr.shift1, q1) *
                                   pseudospin::z_value(level + corr.shift2, q2));
      },
      ctrl);
}

namespace {

ABForm ab_from(double p, const states::CoefficientVector& cv, const TransformedNoise& tn, int q1, int q2,
               const SeriesControl& ctrl) {
  const auto c = pseudospin::correlators(cv, q1, q2);
  return {(1.0 - p) * c.zz + p * noise_zz(tn, q1, q2, ctrl), (1.0 - p) * c.xx, q1, q2};
}

}  // namespace

ABForm ab_at(const NoisyStateModel& model, int q1, int q2, const SeriesControl& ctrl) {
  const auto tn = transform_noise(model, ctrl);
  return ab_from(model.p, states::coefficients(model.pure, ctrl), tn, q1, q2, ctrl);
}

ABForm ab_of(const NoisyStateModel& model, const SeriesControl& ctrl) {
  const auto tn = transform_noise(model, ctrl);
  const auto cv = states::coefficients(model.pure, ctrl);
  const auto ref = pseudospin::kernel(cv);
  ABForm best = ab_from(model.p, cv, tn, ref.q1, ref.q2, ctrl);
  if (model.policy == Policy::UnknownP) return best;
  double best_score = best.a_coeff * best.a_coeff + best.b_coeff * best.b_coeff;
  for (int q1 = pseudospin::kQMin; q1 <= pseudospin::kQMax; ++q1) {
    for (int q2 = pseudospin::kQMin; q2 <= pseudospin::kQMax; ++q2) {
      const auto ab = ab_from(model.p, cv, tn, q1, q2, ctrl);
      const double score = ab.a_coeff * ab.a_coeff + ab.b_coeff * ab.b_coeff;
      if (score > best_score * (1.0 + 1e-14)) {
        best = ab;
        best_score = score;
      }
    }
  }
  return best;
}

double chi_known(const ABForm& ab) { return 2.0 * std::hypot(ab.a_coeff, ab.b_coeff); }

double chi_unknown(const ABForm& ab, double k_ref) {
  return 2.0 * (ab.a_coeff + k_ref * ab.b_coeff) / std::sqrt(1.0 + k_ref * k_ref);
}

double chi(const NoisyStateModel& model, const SeriesControl& ctrl) {
  const auto ab = ab_of(model, ctrl);
  if (model.policy == Policy::KnownP) return chi_known(ab);
  return chi_unknown(ab, pseudospin::kernel(model.pure, ctrl).K);
}

double compact_a_addition(double p, const Distribution& mu, const Distribution& nu, int k,
                          const SeriesControl& ctrl) {
  return (1.0 - p) + p * parity_mean(transform_noise_add(mu, k, ctrl), ctrl) * parity_mean(nu, ctrl);
}

double compact_a_subtraction(double p, const Distribution& mu, const Distribution& nu, int k,
                             const SeriesControl& ctrl) {
  const double pm = parity_mean(transform_noise_sub(mu, k, ctrl), ctrl);
  const double pn = parity_mean(nu, ctrl) - (k % 2 == 1 ? nu(0) : 0.0);
  return (1.0 - p) + (k % 2 == 0 ? 1.0 : -1.0) * p * pm * pn;
}

double p_threshold(double a, double b, Policy policy) {
  if (!(a >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("threshold needs finite a >= 0 and b");
  const double b2 = b * b;
  if (policy == Policy::KnownP) {
    const double den = a * a + b2;
    if (den == 0.0) throw InvalidInput("threshold undefined for a = b = 0");
    return 1.0 - (a * (a - 1.0) + std::sqrt(a * (a - a * b2 + 2.0 * b2))) / den;
  }
  const double s = std::sqrt(1.0 + b2);
  const double den = a + b2;
  if (den == 0.0) throw InvalidInput("threshold undefined for a = b = 0");
  return s * (s - 1.0) / den;
}

ThresholdPair thresholds(const NoisyStateModel& model, const SeriesControl& ctrl) {
  NoisyStateModel pure_noise = model;
  pure_noise.p = 1.0;
  const auto tn = transform_noise(pure_noise, ctrl);
  const auto ref = pseudospin::kernel(model.pure, ctrl);
  ThresholdPair out;
  out.a = 1.0 - noise_zz(tn, ref.q1, ref.q2, ctrl);
  out.b = ref.K;
  out.known = p_threshold(out.a, out.b, Policy::KnownP);
  out.unknown = p_threshold(out.a, out.b, Policy::UnknownP);
  return out;
}

double correlated_critical_r(double p) {
  const double upper = 2.0 - std::sqrt(2.0);
  if (!(p >= 0.5 && p <= upper + 1e-15))
    throw InvalidInput("correlated critical squeezing needs p in [1/2, 2 - sqrt 2]");
  const double u = 1.0 - p;
  const double t = std::sqrt(std::max(0.0, 1.0 - 2.0 * u)) / u;
  if (t >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
  return 0.5 * std::atanh(t);
}

}  // namespace cvbell::noise
