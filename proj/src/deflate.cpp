#include <pencil/deflate.hpp>

namespace pencil {

DeflatePair deflate(const Pencil& P, int p, Index k, RngStream rng) {
  const Index n = P.size();
  if (k < 1 || k > n)
    throw std::invalid_argument("InvalidK: k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(n) + "]");
  const IrsOutput right = irs(P.A, P.B, p);
  const GrurvResult gr = grurv2(right.Ap + right.Bp, right.Ap, -1, +1, rng.child("right"));

  const IrsOutput left = irs(P.A.adjoint(), P.B.adjoint(), p);
  const GrurvResult gl =
      grurv2(left.Ap.adjoint(), (left.Ap + left.Bp).adjoint(), +1, -1, rng.child("left"));

  return {gr.U.leftCols(k), gl.U.leftCols(k)};
}

DeflatePair deflate_one_sided(const Pencil& P, int p, Index k, RngStream rng) {
  const Index n = P.size();
  if (k < 1 || k > n)
    throw std::invalid_argument("InvalidK: k = " + std::to_string(k) + " outside [1, " +
                                std::to_string(n) + "]");
  const IrsOutput right = irs(P.A, P.B, p);
  const GrurvResult gr = grurv2(right.Ap + right.Bp, right.Ap, -1, +1, rng.child("right"));
  CMatrix U = gr.U.leftCols(k);
  return {U, U};
}

}  // namespace pencil
