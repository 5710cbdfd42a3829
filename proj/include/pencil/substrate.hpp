#pragma once

#include <pencil/rng.hpp>
#include <pencil/types.hpp>

#include <string>
#include <vector>

namespace pencil {

/// n x n matrix of i.i.d. N_C(0, 1/n) entries: each entry is
/// (x + iy)/sqrt(2n) with x, y independent standard normals.
CMatrix ginibre(Index n, RngStream rng);

/// rows x cols matrix of i.i.d. N_C(0, 1) entries.
CMatrix gaussian_matrix(Index rows, Index cols, RngStream rng);

struct QrFactors {
  CMatrix Q;  // rows x rows, unitary
  CMatrix R;  // rows x cols, upper trapezoidal (exact zeros below the diagonal)
};

/// Full QR of M (rows >= cols). Rank deficiency is permitted; R may carry
/// zero diagonal entries.
QrFactors qr_full(const CMatrix& M);

/// Columns [from, rows) of qr_full(M).Q without forming the rest; identical
/// bits to slicing the full Q.
CMatrix qr_q_tail(const CMatrix& M, Index from);

struct QlFactors {
  CMatrix Q;  // rows x rows, unitary
  CMatrix L;  // rows x cols, lower trapezoidal
};

/// Full QL of M (rows >= cols), by index reversal of qr_full.
QlFactors ql_full(const CMatrix& M);

struct RqFactors {
  CMatrix R;  // upper triangular
  CMatrix Q;  // unitary
};

/// RQ of a square M: M = R Q.
RqFactors rq_full(const CMatrix& M);

/// Singular values, nonincreasing; length min(rows, cols).
RVector svd_values(const CMatrix& M);

double smallest_sv(const CMatrix& M);

double spectral_norm(const CMatrix& M);

/// M^{-1} RHS. Signals SingularMatrixError when smallest_sv(M) <= n*u*||M||_2
/// (u = machine epsilon).
CMatrix solve(const CMatrix& M, const CMatrix& rhs);

/// RHS M^{-1}, same singularity contract as solve.
CMatrix right_divide(const CMatrix& rhs, const CMatrix& M);

CMatrix matmul(const CMatrix& X, const CMatrix& Y);

struct EigenSystem {
  std::vector<ProjectiveEigenvalue> values;
  CMatrix vectors;  // unit columns, aligned with values
};

/// Verification oracle for the generalized eigenvalues of (A, B). Uses the
/// eigendecomposition of B^{-1}A when B is well-conditioned
/// (smallest_sv(B) > 1e-8 ||B||_2); otherwise falls back to A^{-1}B with
/// eigenvalues inverted, mapping |mu| <= 1e-14 ||A^{-1}B||_2 to at-infinity.
/// Non-authoritative when both A and B are near-singular.
EigenSystem ref_eigensystem(const Pencil& P);

std::vector<ProjectiveEigenvalue> ref_eig(const Pencil& P);

/// Matrix Market "matrix array complex general" I/O.
void write_matrix_market(const std::string& path, const CMatrix& M);
CMatrix read_matrix_market(const std::string& path);

}  // namespace pencil
