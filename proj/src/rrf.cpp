#include <pencil/rrf.hpp>

#include <cmath>

namespace pencil {

namespace {

/// Haar unitary from the QR of a standard complex Gaussian, with the usual
/// diagonal phase correction.
CMatrix haar_unitary(Index n, RngStream rng) {
  const CMatrix G = gaussian_matrix(n, n, rng);
  auto [Q, R] = qr_full(G);
  for (Index j = 0; j < n; ++j) {
    const Complex r = R(j, j);
    const double a = std::abs(r);
    if (a > 0) Q.col(j) *= r / a;
  }
  return Q;
}

}  // namespace

RurvResult rurv(const CMatrix& A, RngStream rng) {
  if (A.rows() != A.cols()) throw ShapeError("rurv: square input required");
  CMatrix V = haar_unitary(A.rows(), rng);
  auto [U, R] = qr_full(A * V.adjoint());
  return {std::move(U), std::move(R), std::move(V)};
}

RulvResult rulv(const CMatrix& A, RngStream rng) {
  if (A.rows() != A.cols()) throw ShapeError("rulv: square input required");
  CMatrix V = haar_unitary(A.rows(), rng);
  auto [U, L] = ql_full(A * V.adjoint());
  return {std::move(U), std::move(L), std::move(V)};
}

GrurvResult grurv2(const CMatrix& A1, const CMatrix& A2, int m1, int m2, RngStream rng) {
  if (A1.rows() != A1.cols() || A2.rows() != A2.cols() || A1.rows() != A2.rows())
    throw ShapeError("grurv2: square matrices of equal size required");
  if (!((m1 == -1 && m2 == 1) || (m1 == 1 && m2 == -1)))
    throw std::invalid_argument("grurv2: sign pattern must be (-1,+1) or (+1,-1)");

  CMatrix U_current, R2, V;
  if (m2 == 1) {
    auto f = rurv(A2, rng);
    U_current = std::move(f.U);
    R2 = std::move(f.R);
    V = std::move(f.V);
  } else {
    auto f = rulv(A2.adjoint(), rng);
    U_current = std::move(f.U);
    R2 = f.L.adjoint();
    V = std::move(f.V);
  }

  CMatrix U, R1;
  if (m1 == 1) {
    auto f = qr_full(A1 * U_current);
    U = std::move(f.Q);
    R1 = std::move(f.R);
  } else {
    auto f = rq_full(U_current.adjoint() * A1);
    R1 = std::move(f.R);
    U = f.Q.adjoint();
  }
  return {std::move(U), std::move(R1), std::move(R2), std::move(V)};
}

Index rank_count(const CMatrix& R1, const CMatrix& R2, double threshold) {
  if (R1.rows() != R1.cols() || R2.rows() != R2.cols() || R1.rows() != R2.rows())
    throw ShapeError("rank_count: square matrices of equal size required");
  if (!(threshold > 0)) throw std::invalid_argument("rank_count: threshold must be positive");
  Index count = 0;
  for (Index i = 0; i < R1.rows(); ++i) {
    const double d1 = std::abs(R1(i, i));
    const double d2 = std::abs(R2(i, i));
    if (d1 == 0.0 || d2 >= threshold * d1) ++count;
  }
  return count;
}

}  // namespace pencil
