#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cvbell/noise.hpp"

namespace cvbell::imperfect {

using specfun::SeriesControl;

/// Twin-beam source labeled r_label that actually produces r_actual.
struct FaultyGenerator {
  double r_label = 0.0;
  double r_actual = 0.0;
};

void validate(const FaultyGenerator& gen);

enum class SuppressionKind { Exponential, Gaussian };

/// The target k-photon state is mixed with k-1, ..., k-m photon states,
/// weighted e^{-i/lambda} (Exponential) or e^{-i^2/sigma^2} (Gaussian).
struct SuppressionModel {
  SuppressionKind kind = SuppressionKind::Exponential;
  double dispersion = 1.0;
  int cutoff = 0;
};

/// p_0 ... p_m, nonincreasing; p_0 absorbs the rounding so the sum is 1.
std::vector<double> suppression_weights(const SuppressionModel& model);

/// Measurements set for the TMSV at r_label, state at r_actual.
double chi_faulty(const FaultyGenerator& gen);

/// r' at which chi_faulty equals 2; r_label may be +inf.
double critical_rprime(double r_label);

/// k photons added to mode 1 of the faulty TMSV, settings optimal for the
/// k-added state at r_label.
double chi_faulty_added(const FaultyGenerator& gen, int k, const SeriesControl& ctrl = {});

/// Imperfect k-photon operation on a noisy state with known p. The model's
/// pure part fixes x and which mode is acted on (mode 1 addition if it carries
/// no operation); its photon count is replaced by k - i for each component.
/// Settings and pseudospin pair are those optimal for the k-photon state.
double chi_imperfect_noisy(const noise::NoisyStateModel& model, int k, const SuppressionModel& sup,
                           const SeriesControl& ctrl = {});

/// Imperfect k-photon addition on a faulty generator.
double chi_imperfect_faulty(const FaultyGenerator& gen, int k, const SuppressionModel& sup,
                            const SeriesControl& ctrl = {});

/// Compact cross-term formulas, each component's A, B (or K) taken at its
/// own optimal pair and odd-i components reduced to -A_k A_{k-i} (or -1).
double compact_imperfect_noisy(const noise::NoisyStateModel& model, int k, const SuppressionModel& sup,
                               const SeriesControl& ctrl = {});
double compact_imperfect_faulty(const FaultyGenerator& gen, int k, const SuppressionModel& sup,
                                const SeriesControl& ctrl = {});

/// Smallest k <= k_max with curve(k) > 2.
std::optional<int> activation_threshold(const std::function<double(int)>& curve, int k_max);

/// Copy of state with its single operation replaced by `count` photons of the
/// same kind on the same mode (mode 1 addition when state carries none).
states::PhotonVariedState with_count(const states::PhotonVariedState& state, int count);

}  // namespace cvbell::imperfect
