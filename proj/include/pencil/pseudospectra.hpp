#pragma once

#include <pencil/grid.hpp>
#include <pencil/substrate.hpp>
#include <pencil/types.hpp>

#include <string>
#include <utility>
#include <vector>

namespace pencil {

/// z is in the eps-pseudospectrum of (A, B) iff
/// smallest_sv(A - zB) <= eps (1 + |z|).
bool in_pseudospectrum(const Pencil& P, Complex z, double eps);

struct Region {
  double re0, re1, im0, im1;
};

struct ScalarField {
  Region region{};
  int resolution = 0;
  // values(iy, ix) for z = (re0 + ix*dx) + i(im0 + iy*dy), endpoints included
  Eigen::MatrixXd values;
};

/// log10[(1 + |z|) / sigma_min(A - zB)] sampled over the region; values are
/// clamped at 16 so exact eigenvalues stay finite.
ScalarField pseudospec_levels(const Pencil& P, Region region, int resolution, int threads = 0);

/// Single-matrix variant, log10[1 / sigma_min(B^{-1}A - zI)], same clamp.
ScalarField pseudospec_levels_product(const Pencil& P, Region region, int resolution,
                                      int threads = 0);

/// Lambda_eps(A, B) is bounded iff eps < sigma_min(B).
bool bounded_check(const Pencil& P, double eps);

/// Outer inclusion radius around the eigenvalues:
/// eps * kappaV * ||B^{-1}|| * (1 + (eps ||B^{-1}|| + ||B^{-1}A||) / (1 - eps ||B^{-1}||)).
/// Throws UnboundedPseudospectrumError when eps >= sigma_min(B).
double bauer_fike_radius(const Pencil& P, double eps, double kappaV);

struct ShatterReport {
  bool shattered = false;
  double min_grid_sigma_ratio = 0.0;  // min over samples of sigma_min/(eps (1+|z|))
  std::vector<std::pair<Complex, BoxLocation>> eigenvalue_boxes;
  std::vector<std::string> violations;
};

/// Samples every grid segment at `samples_per_edge` equispaced points and
/// requires sigma_min(A - zB) > eps (1 + |z|) throughout; assigns each finite
/// oracle eigenvalue to a box and requires uniqueness. Violations are
/// reported, not thrown. fail_fast stops at the first violation (the reported
/// min ratio then covers only the samples seen).
ShatterReport verify_shattering(const Pencil& P, const Grid& g, double eps, int samples_per_edge,
                                const std::vector<ProjectiveEigenvalue>& oracle_eigs,
                                bool fail_fast = false);

/// Chordal distance between projective eigenvalues, in [0, 1].
double chordal_distance(const ProjectiveEigenvalue& l1, const ProjectiveEigenvalue& l2);

}  // namespace pencil
