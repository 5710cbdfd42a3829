#pragma once

#include <pencil/deflate.hpp>
#include <pencil/grid.hpp>
#include <pencil/rng.hpp>
#include <pencil/types.hpp>

#include <vector>

namespace pencil {

enum class Mode { theoretical, practical };

/// Tuning parameters of the divide-and-conquer eigensolver. The recursion
/// re-derives the per-level quantities (zeta, eta, delta, p, rank threshold)
/// from these via compute_params.
struct EigParams {
  Mode mode = Mode::practical;
  double epsilon = 1e-6;  // pseudospectrum level the grid is assumed to shatter
  double alpha = 0.0;     // B-scaling exponent (0 in practical mode)
  double beta = 1e-6;     // eigenvector accuracy target
  double theta = 0.1;     // failure budget
  int n_global = 1;       // size of the original problem
  Index cutoff = 1;       // subproblem size at which to delegate to ref_eig
};

struct DerivedParams {
  double zeta;            // line-search budget, both orientations combined
  double eta;
  double delta;
  int p;                  // repeated-squaring depth
  double rank_threshold;  // acceptance threshold on |R2(i,i)/R1(i,i)|
};

/// Per-level parameter derivation. Theoretical mode evaluates the four-way
/// maximum for p verbatim and throws ParameterUnderflowError when eta or
/// delta underflows to zero (use practical mode instead). Practical mode
/// uses p = ceil(log2(n/epsilon)) and drops the 1/n^3 factor from the rank
/// threshold.
DerivedParams compute_params(const EigParams& params, Index m, const Grid& g);

struct SplitRecord {
  Index m;
  Index k;
  long lines_checked;
  Orientation orientation;
  int depth;
};

struct RunStats {
  std::vector<SplitRecord> splits;
  double pseudo_flops = 0.0;  // sum of m^3 * lines_checked over splits
  long delegated = 0;         // subproblems handed to ref_eig
};

struct EigResult {
  CMatrix T;   // approximate right unit eigenvectors
  CVector d1;  // diagonal of D1
  CVector d2;  // diagonal of D2
  RunStats stats;
};

/// Block assembly of one divide step: T = [UR_k UR_mk] diag(left.T, right.T),
/// diagonals concatenated, stats merged.
EigResult assemble(const CMatrix& UR_k, const CMatrix& UR_mk, EigResult left, EigResult right);

/// Divide-and-conquer eigensolver over a shattered grid. Requires (caller's
/// obligation) ||A||_2 <= 3, ||B||_2 <= 3 n^alpha and Lambda_eps(A, B)
/// shattered with respect to g. Returns approximate right unit eigenvectors
/// and a diagonal pencil whose eigenvalues box-match those of (A, B).
/// Throws NoSplitFoundError when no grid line yields an acceptable split.
EigResult eig(const Pencil& P, const Grid& g, const EigParams& params, RngStream rng);

}  // namespace pencil
