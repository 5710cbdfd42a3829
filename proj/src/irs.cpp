#include <pencil/irs.hpp>

namespace pencil {

IrsOutput irs(const CMatrix& A, const CMatrix& B, int p) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ShapeError("irs: square matrices of equal size required");
  if (p < 0) throw std::invalid_argument("irs: p must be >= 0");
  const Index n = A.rows();
  CMatrix Aj = A, Bj = B;
  CMatrix stack(2 * n, n);
  for (int j = 0; j < p; ++j) {
    stack.topRows(n) = Bj;
    stack.bottomRows(n) = -Aj;
    // only the trailing n columns of the full Q are needed
    const CMatrix Qtail = qr_q_tail(stack, n);
    const CMatrix Q12 = Qtail.topRows(n);
    const CMatrix Q22 = Qtail.bottomRows(n);
    CMatrix Anext = Q12.adjoint() * Aj;
    Bj = Q22.adjoint() * Bj;
    Aj = std::move(Anext);
  }
  return {std::move(Aj), std::move(Bj), p};
}

CMatrix right_projector_approx(const IrsOutput& out) { return solve(out.Ap + out.Bp, out.Ap); }

CMatrix left_projector_approx(const IrsOutput& out_of_hermitian_inputs) {
  return right_projector_approx(out_of_hermitian_inputs).adjoint();
}

namespace {

Pencil mobius(const Pencil& P, Complex inner, Complex outer) {
  return Pencil(P.A - inner * P.B, P.A - outer * P.B);
}

}  // namespace

Pencil mobius_right(const Pencil& P, double h, Orientation o) {
  if (o == Orientation::vertical) return mobius(P, Complex(h - 1, 0), Complex(h + 1, 0));
  return mobius(P, Complex(0, h - 1), Complex(0, h + 1));
}

Pencil mobius_left(const Pencil& P, double h, Orientation o) {
  if (o == Orientation::vertical) return mobius(P, Complex(h + 1, 0), Complex(h - 1, 0));
  return mobius(P, Complex(0, h + 1), Complex(0, h - 1));
}

}  // namespace pencil
