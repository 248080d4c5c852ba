#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "cvbell/pseudospin.hpp"

namespace cvbell::noise {

using specfun::SeriesControl;
using states::PhotonVariedState;

/// Probability distribution over photon numbers n = 0, 1, 2, ...
///
/// Infinite-support distributions are sampled lazily and summed under the
/// SeriesControl tail rule, so their weights must eventually decrease.
class Distribution {
 public:
  using WeightFn = std::function<double(std::size_t)>;

  Distribution(WeightFn weight, std::optional<std::size_t> support);

  /// Finite support, normalized on construction. Throws on zero total mass.
  static Distribution from_weights(std::vector<double> weights);
  static Distribution point_mass(std::size_t n);
  /// Uniform on [lo, hi].
  static Distribution uniform(std::size_t lo, std::size_t hi);

  double operator()(std::size_t n) const;
  const std::optional<std::size_t>& support() const { return support_; }

  /// sum_n f(n) w_n.
  double expectation(const std::function<double(std::size_t)>& f, const SeriesControl& ctrl = {}) const;
  double total(const SeriesControl& ctrl = {}) const;

  /// First `count` weights (zero-padded past a finite support).
  std::vector<double> materialize(std::size_t count) const;

 private:
  std::shared_ptr<const WeightFn> weight_;
  std::optional<std::size_t> support_;
};

/// mu_n = (1 - e^-beta) e^{-beta n}; beta = +inf gives the vacuum.
Distribution thermal_dist(double beta);
/// mu_n = 2 e^{-n^2/sigma^2} / (1 + theta_3(0, e^{-1/sigma^2})).
Distribution gaussian_dist(double sigma, const SeriesControl& ctrl = {});

/// sum_n (-1)^n w_n.
double parity_mean(const Distribution& dist, const SeriesControl& ctrl = {});

/// Reweighting of a diagonal single-mode state when k photons are added:
/// w_n binom(n+k, k), renormalized. Entry n sits on Fock level n + k.
Distribution transform_noise_add(const Distribution& mu, int k, const SeriesControl& ctrl = {});
/// Reweighting when k photons are subtracted: w_{n+k} binom(n+k, k),
/// renormalized. Entry n sits on Fock level n.
Distribution transform_noise_sub(const Distribution& mu, int k, const SeriesControl& ctrl = {});

struct LocalNoise {
  Distribution mu;
  Distribution nu;
};

struct CorrelatedNoise {
  Distribution c;
};

using DiagonalNoiseSpec = std::variant<LocalNoise, CorrelatedNoise>;

enum class Policy { KnownP, UnknownP };

/// (1 - p) |pure><pure| + p * noise, with the pure state's photon operation
/// also applied to the noise.
struct NoisyStateModel {
  double p = 0.0;
  PhotonVariedState pure;
  DiagonalNoiseSpec noise;
  Policy policy = Policy::KnownP;
};

/// E(theta_a, theta_b) = A cos cos + B sin sin at pseudospin offsets (q1, q2).
struct ABForm {
  double a_coeff = 0.0;
  double b_coeff = 0.0;
  int q1 = 0;
  int q2 = 0;
};

void validate(const NoisyStateModel& model);

/// Noise after the model's photon operation. Entry n of each distribution
/// occupies Fock level n + shift on its mode.
struct TransformedNoise {
  struct Local {
    Distribution mu;
    Distribution nu;
    int shift1;
    int shift2;
  };
  struct Correlated {
    Distribution c;
    int shift1;
    int shift2;
  };
  std::variant<Local, Correlated> form;
};

TransformedNoise transform_noise(const NoisyStateModel& model, const SeriesControl& ctrl = {});

/// <Sz x Sz> of the transformed noise at (q1, q2).
double noise_zz(const TransformedNoise& noise, int q1, int q2, const SeriesControl& ctrl = {});

/// A, B at a given pseudospin pair.
ABForm ab_at(const NoisyStateModel& model, int q1, int q2, const SeriesControl& ctrl = {});

/// A, B at the pair relevant to the model's policy: the pair maximizing
/// A^2 + B^2 when p is known, the noiseless state's optimal pair otherwise.
ABForm ab_of(const NoisyStateModel& model, const SeriesControl& ctrl = {});

double chi_known(const ABForm& ab);
/// Settings optimal for a reference state with kernel K_ref.
double chi_unknown(const ABForm& ab, double k_ref);

/// Maximal Bell value under the model's policy.
double chi(const NoisyStateModel& model, const SeriesControl& ctrl = {});

/// Compact parity-sum forms for single-mode operations on local noise, kept as
/// diagnostics against the generic construction.
double compact_a_addition(double p, const Distribution& mu, const Distribution& nu, int k,
                          const SeriesControl& ctrl = {});
double compact_a_subtraction(double p, const Distribution& mu, const Distribution& nu, int k,
                             const SeriesControl& ctrl = {});

/// Critical mixing probability below which chi > 2, for
/// A = (1 - p) + p (1 - a), B = (1 - p) b.
double p_threshold(double a, double b, Policy policy);

struct ThresholdPair {
  double a = 0.0;
  double b = 0.0;
  double known = 0.0;
  double unknown = 0.0;
};

/// a and b of the model (p ignored) and the two thresholds.
ThresholdPair thresholds(const NoisyStateModel& model, const SeriesControl& ctrl = {});

/// Squeezing above which correlated noise with unknown p violates; p must
/// lie in [1/2, 2 - sqrt 2]. Returns +inf at the upper end.
double correlated_critical_r(double p);

}  // namespace cvbell::noise
