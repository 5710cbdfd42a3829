#pragma once

#include <pencil/grid.hpp>
#include <pencil/substrate.hpp>
#include <pencil/types.hpp>

namespace pencil {

struct IrsOutput {
  CMatrix Ap;
  CMatrix Bp;
  int steps = 0;
};

/// Implicit repeated squaring: p rounds of QR on the stacked [B_j; -A_j]
/// with A_{j+1} = Q12^H A_j, B_{j+1} = Q22^H B_j (Q12/Q22 the top-right and
/// bottom-right n x n blocks of the full Q), so that
/// Ap^{-1} Bp = (A^{-1} B)^{2^p}. Breakdown is not detected here; it shows
/// up as ill-conditioned outputs downstream.
IrsOutput irs(const CMatrix& A, const CMatrix& B, int p);

/// (Ap + Bp)^{-1} Ap, the approximate projector onto the right deflating
/// subspace for eigenvalues outside the unit circle.
CMatrix right_projector_approx(const IrsOutput& out);

/// Ap^H (Ap + Bp)^{-H} for outputs of irs on the conjugate-transposed
/// pencil: the approximate projector onto the matching left subspace.
CMatrix left_projector_approx(const IrsOutput& out_of_hermitian_inputs);

/// Pencil of the fractional map sending the grid line to the unit circle
/// with the far side of the line (larger coordinate) mapped outside the
/// unit disk. Vertical line h: (A - (h-1)B, A - (h+1)B); horizontal uses
/// i(h-+1) coefficients.
Pencil mobius_right(const Pencil& P, double h, Orientation o);

/// Same map with inside/outside swapped: the near side lands outside.
Pencil mobius_left(const Pencil& P, double h, Orientation o);

}  // namespace pencil
