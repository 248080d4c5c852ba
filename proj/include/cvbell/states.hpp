#pragma once

#include <cstddef>
#include <vector>

#include "cvbell/specfun.hpp"

namespace cvbell::states {

using specfun::SeriesControl;

/// Two-mode squeezed vacuum with photons added to (op > 0) or subtracted from
/// (op < 0) each mode. x = tanh^2 r is the squeezing fraction.
struct PhotonVariedState {
  double x = 0.0;
  int op1 = 0;
  int op2 = 0;

  static PhotonVariedState from_squeezing(double r, int op1 = 0, int op2 = 0);

  bool is_addition() const { return op1 >= 0 && op2 >= 0; }
  bool is_subtraction() const { return op1 <= 0 && op2 <= 0; }
};

bool operator==(const PhotonVariedState& a, const PhotonVariedState& b);

double squeezing_fraction(double r);  // tanh^2 r
double squeezing_of(double x);        // artanh sqrt(x)

/// Throws InvalidInput for x outside [0, 1) or mixed-sign operations.
void validate(const PhotonVariedState& state);

/// Schmidt-form coefficients: the state equals
///   sum_j entries[j] |first + j, first + j + offset>.
struct CoefficientVector {
  int offset = 0;  // mode-2 photon number minus mode-1 photon number
  int first = 0;   // mode-1 photon number carried by entries[0]
  std::vector<double> entries;
  double deficit = 0.0;  // probability mass dropped by truncation, before renormalization

  std::size_t cutoff() const { return entries.size(); }
  double norm_squared() const;
  /// Amplitude on |n, n + offset>, zero outside the materialized support.
  double at_mode1(int n) const;
};

/// Materializes normalized coefficients up to an adaptive cutoff; the dropped
/// tail of sum c_n^2 is below ctrl.tolerance and the vector is renormalized.
CoefficientVector coefficients(const PhotonVariedState& state, const SeriesControl& ctrl = {});

/// Closed-form coefficient indexed by the TMSV level n: c_n^{(k,l)} for
/// addition (n >= 0), c_n^{(-k,-l)} for subtraction (n >= max(k,l)).
/// Evaluated independently through log-binomials.
double closed_form_coefficient(const PhotonVariedState& state, int n, const SeriesControl& ctrl = {});

/// Single-mode subtraction rewritten as the equivalent addition on the other
/// mode: (-k, 0) -> (0, k) and (0, -k) -> (k, 0).
PhotonVariedState equivalent_addition_form(const PhotonVariedState& state);

/// Von Neumann entropy of either reduced state, -sum c^2 ln c^2.
double entanglement_entropy(const PhotonVariedState& state, const SeriesControl& ctrl = {});

}  // namespace cvbell::states
