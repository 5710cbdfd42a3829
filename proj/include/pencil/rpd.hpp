#pragma once

#include <pencil/eigsolve.hpp>
#include <pencil/grid.hpp>
#include <pencil/types.hpp>

#include <utility>
#include <vector>

namespace pencil {

struct DiagResult {
  CMatrix S;
  CMatrix T;
  CVector D;                      // diagonal of D; entries with at_infinity set are meaningless
  std::vector<bool> at_infinity;  // |D2(i,i)| <= 1e-300 guard, not a semantic branch
  Pencil perturbed;
  Grid grid;
  EigParams params;
  RunStats stats;

  bool any_infinite() const;
  std::vector<Complex> finite_values() const;
};

/// Randomized pencil diagonalization. Requires ||A||_2, ||B||_2 <= 1 and
/// 0 < eps_user < 1. Perturbs with gamma = eps_user/16 Ginibre draws, builds
/// the random grid, runs the eigensolver on the perturbed (and, in
/// theoretical mode, n^alpha-scaled) pencil and assembles
/// D(i,i) = n^alpha D1(i,i)/D2(i,i), S = B~ T.
DiagResult rpd(const Pencil& P, double eps_user, Mode mode, RngStream rng, Index cutoff = 1);

struct NormalizedDiag {
  DiagResult result;  // diagonalization of (A/scale, B/scale)
  double scale;       // multiply S by this to recover a diagonalization of (A, B)
};

/// Convenience wrapper for arbitrary pencils: divides by max(||A||, ||B||)
/// (when > 1) and records the factor.
NormalizedDiag rpd_normalized(const Pencil& P, double eps_user, Mode mode, RngStream rng,
                              Index cutoff = 1);

struct DiagResiduals {
  double left_log10;   // log10 max(||A - S D T^{-1}||, ||B - S T^{-1}||)
  double right_log10;  // log10 max(||A T - S D||, ||B T - S||)
};

/// Both residual forms, clamped below at -17. Throws SingularMatrixError for
/// numerically singular T (reported as run failure) and refuses results with
/// at-infinity entries.
DiagResiduals diag_residuals(const Pencil& P, const DiagResult& res);

/// The left-form value of diag_residuals: the run succeeds when this is at
/// most log10(eps_user).
double diag_error(const Pencil& P, const DiagResult& res);

/// Mean absolute eigenvalue error after sorting both sides by magnitude.
/// Infinite oracle values are dropped together with the same number of
/// largest-magnitude approximations.
double eigen_error(std::vector<Complex> approx, const std::vector<ProjectiveEigenvalue>& oracle);

/// Forward-error bounds (eigenvalues, eigenvectors):
/// (4 gap kappaV eps, 24 n kappaV eps).
std::pair<double, double> forward_bound(const Pencil& P, double kappaV, double gap, double eps);

/// Pseudo-flop count of the recorded splits divided by the cost of an ideal
/// run (one line per split, nearest-half splits down to the cutoff). Empty
/// stats give 1.0.
double efficiency_factor(const RunStats& stats, Index n, Index cutoff);

/// (gap, kappaV) from the reference oracle: minimum pairwise eigenvalue
/// distance and the condition number of the unit-column right eigenvector
/// matrix of B^{-1}A (an upper bound on the infimal kappa_V). Throws
/// OracleUnavailableError when B is near-singular.
std::pair<double, double> gap_and_kappaV(const Pencil& P);

}  // namespace pencil
