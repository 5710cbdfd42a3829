#pragma once

#include <pencil/irs.hpp>
#include <pencil/rng.hpp>
#include <pencil/rrf.hpp>
#include <pencil/types.hpp>

namespace pencil {

struct DeflatePair {
  CMatrix UR;  // n x k, orthonormal columns
  CMatrix UL;  // n x k, orthonormal columns
};

/// Orthonormal bases approximately spanning the right and left deflating
/// subspaces of (A, B) for the k eigenvalues outside the unit circle. The
/// caller asserts there are exactly k of them and none on the circle. The
/// left pass recomputes repeated squaring on the conjugate-transposed
/// pencil.
DeflatePair deflate(const Pencil& P, int p, Index k, RngStream rng);

/// Single-matrix specialization: when the untransformed B-argument is the
/// identity, the left and right deflating subspaces coincide, so only the
/// right pass is run and UL = UR.
DeflatePair deflate_one_sided(const Pencil& P, int p, Index k, RngStream rng);

}  // namespace pencil
