#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <variant>
#include <vector>

#include "cvbell/imperfect.hpp"
#include "cvbell/noise.hpp"
#include "cvbell/pseudospin.hpp"

namespace cvbell::oracle {

using SparseMatrix = Eigen::SparseMatrix<double>;

inline constexpr int kMaxCutoff = 4096;

struct TruncatedOperator {
  int cutoff = 0;
  SparseMatrix matrix;
};

/// S^z, S^x and the real antisymmetric part of S^y (S^y = -i * y_real).
struct PseudospinMatrices {
  TruncatedOperator z;
  TruncatedOperator x;
  TruncatedOperator y_real;
};

/// Throws InvalidInput when N < |q| + 4.
PseudospinMatrices pseudospin_matrices(int q, int N);

struct PureComponent {
  SparseMatrix amplitudes;  // (n1, n2) -> <n1, n2|psi>
};

struct ProductDiagonalComponent {
  Eigen::VectorXd mode1;
  Eigen::VectorXd mode2;
};

struct DiagonalComponent {
  SparseMatrix populations;  // (n1, n2) -> <n1, n2|rho|n1, n2>
};

struct Component {
  double weight = 1.0;
  std::variant<PureComponent, ProductDiagonalComponent, DiagonalComponent> body;
};

/// Explicit two-mode density operator on a truncated Fock space.
struct Mixture {
  int cutoff = 0;
  double tail_mass = 0.0;  // mass at levels >= 3N/4 plus mass lost to truncation
  std::vector<Component> components;
};

struct OracleOptions {
  int cutoff = 200;
  bool force_cutoff = false;  // never auto-double; fail instead
  double tail_limit = 1e-12;
  int grid = 24;
};

/// States are built by applying creation/annihilation operators to a truncated
/// TMSV (and to the materialized noise) and renormalizing. The cutoff doubles
/// until the tail mass is below the limit; TruncationError otherwise.
Mixture build_pure(const states::PhotonVariedState& state, const OracleOptions& opts = {});
Mixture build_noisy(const noise::NoisyStateModel& model, const OracleOptions& opts = {});
/// sum_i p_i rho_{k-i} for an imperfect k-photon operation on a noisy model.
Mixture build_imperfect_noisy(const noise::NoisyStateModel& model, int k, const imperfect::SuppressionModel& sup,
                              const OracleOptions& opts = {});
/// Same for k photons added to the faulty generator's output.
Mixture build_imperfect_faulty(const imperfect::FaultyGenerator& gen, int k,
                               const imperfect::SuppressionModel& sup, const OracleOptions& opts = {});

/// <A x B> by explicit traces.
double expectation(const Mixture& rho, const SparseMatrix& a, const SparseMatrix& b);

/// T_ij = <S^i x S^j>, i, j in (x, y, z).
Eigen::Matrix3d correlation_matrix(const Mixture& rho, int q1, int q2);

/// Bell-CHSH value at fixed settings, measurement directions in the x-z plane.
double bell_value(const Mixture& rho, const pseudospin::BellSettings& settings);

struct NumericResult {
  double chi = 0.0;
  pseudospin::BellSettings settings;
};

/// Grid search over the four angles, coordinate-wise golden-section
/// refinement, every (q1, q2) in the pseudospin window.
NumericResult chi_numeric(const Mixture& rho, int grid = 24);

/// 2 sqrt(sum of the two largest eigenvalues of T^T T), maximized over the
/// (q1, q2) window.
double chi_eigen(const Mixture& rho);
double chi_eigen(const Eigen::Matrix3d& t);

}  // namespace cvbell::oracle
