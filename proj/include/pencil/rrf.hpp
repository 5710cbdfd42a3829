#pragma once

#include <pencil/rng.hpp>
#include <pencil/substrate.hpp>
#include <pencil/types.hpp>

namespace pencil {

struct RurvResult {
  CMatrix U;  // unitary
  CMatrix R;  // upper triangular
  CMatrix V;  // Haar unitary
};

/// Randomized rank-revealing URV: V from the QR of a standard complex
/// Gaussian (phase-corrected so V is Haar), then U R = QR(A V^H).
RurvResult rurv(const CMatrix& A, RngStream rng);

struct RulvResult {
  CMatrix U;  // unitary
  CMatrix L;  // lower triangular
  CMatrix V;  // Haar unitary
};

/// ULV variant: the second factorization is QL instead of QR.
RulvResult rulv(const CMatrix& A, RngStream rng);

struct GrurvResult {
  CMatrix U;
  CMatrix R1;
  CMatrix R2;
  CMatrix V;
};

/// Two-matrix generalized RURV: U R1^{m1} R2^{m2} V is a rank-revealing
/// factorization of A1^{m1} A2^{m2}, for the sign patterns (-1, +1) and
/// (+1, -1). The inverse is never formed.
GrurvResult grurv2(const CMatrix& A1, const CMatrix& A2, int m1, int m2, RngStream rng);

/// Number of diagonal ratios |R2(i,i)/R1(i,i)| at or above the threshold;
/// R1(i,i) = 0 counts as above (the direction survived squaring).
Index rank_count(const CMatrix& R1, const CMatrix& R2, double threshold);

}  // namespace pencil
