#pragma once

#include "cvbell/states.hpp"

namespace cvbell::pseudospin {

using specfun::SeriesControl;
using states::CoefficientVector;
using states::PhotonVariedState;

/// Window of pseudospin offsets scanned when optimizing over (q1, q2).
inline constexpr int kQMin = -2;
inline constexpr int kQMax = 2;

struct BellSettings {
  double theta_a = 0.0;
  double theta_b = 0.0;
  double theta_a_prime = 0.0;
  double theta_b_prime = 0.0;
  int q1 = 0;
  int q2 = 0;
};

/// E(theta_a, theta_b) = sign cos cos + K sin sin, with the (q1, q2) pair
/// that produces it.
struct KernelForm {
  int sign = 1;
  double K = 0.0;
  int q1 = 0;
  int q2 = 0;
};

/// Expectation values <Sz x Sz> and <Sx x Sx> at a fixed (q1, q2); these are
/// the only non-zero cosine/sine weights for the states handled here.
struct Correlators {
  double zz = 0.0;
  double xx = 0.0;
};

/// Lowest Fock level covered by S_q: the smallest 2n + q >= 0.
int first_level(int q);
/// Eigenvalue of S^z_q on |level>: -1, +1, or 0 if the level is not covered.
int z_value(int level, int q);
/// True when S^+_q maps |level> to |level + 1>.
bool pair_start(int level, int q);

Correlators correlators(const CoefficientVector& cv, int q1, int q2);

KernelForm kernel(const CoefficientVector& cv);
KernelForm kernel(const PhotonVariedState& state, const SeriesControl& ctrl = {});

double chi_max(const KernelForm& kernel);
double chi_max(double K);

BellSettings optimal_settings(const KernelForm& kernel);

double correlation(const Correlators& c, double theta_a, double theta_b);
double correlation(const PhotonVariedState& state, double theta_a, double theta_b, int q1, int q2,
                   const SeriesControl& ctrl = {});

double bell_chsh(const Correlators& c, const BellSettings& settings);
double bell_chsh(const PhotonVariedState& state, const BellSettings& settings, const SeriesControl& ctrl = {});

/// Relative enhancement (chi_new - chi_ref) / chi_ref.
double gain(double chi_new, double chi_ref);

}  // namespace cvbell::pseudospin
