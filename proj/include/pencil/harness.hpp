#pragma once

#include <pencil/rpd.hpp>
#include <pencil/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace pencil {

enum class Recipe { planted, jordan, singular_b, singular_pencil, custom };

std::string recipe_name(Recipe r);
Recipe recipe_from_name(const std::string& name);

struct ExperimentConfig {
  Recipe name = Recipe::planted;
  Index n = 50;
  double eps_user = 1e-6;
  int runs = 100;
  std::uint64_t seed = 0;
  Index cutoff = 1;
  bool comparator = false;
  Mode mode = Mode::practical;
  std::string custom_a;  // matrix market paths for Recipe::custom
  std::string custom_b;
  int threads = 0;  // 0 = PENCIL_THREADS or hardware
};

/// A = X Lambda Y^{-1}, B = X Y^{-1} with X, Y standard complex Gaussian and
/// Lambda(j,j) = -2 + 4(j-1)/(n-1); jointly normalized so the larger norm is
/// exactly 1. Resamples if Y is numerically singular.
Pencil make_planted(Index n, RngStream rng);

/// The planted eigenvalues (unchanged by the joint normalization).
std::vector<Complex> planted_spectrum(Index n);

/// A = nilpotent single Jordan block, B = I.
Pencil make_jordan(Index n);

/// Random Gaussian pencil with B deflated by its smallest singular triplet
/// so sigma_min(B) vanishes while the remaining singular values move by at
/// most roundoff; jointly normalized.
Pencil make_singular_b(Index n, RngStream rng);

/// The fixed 4x4 singular pencil with one simple eigenvalue at 1, jointly
/// normalized.
Pencil make_singular_pencil();

/// Inversion-based baseline: identical perturbation draws and grid as rpd on
/// the same stream, but the eigensolver runs on (B~^{-1} A~, I).
DiagResult comparator_inversion(const Pencil& P, double eps_user, RngStream rng, Index cutoff);

struct RunRecord {
  int index = 0;
  bool comparator = false;
  double diag_error = 0.0;   // NaN when the run threw
  double eigen_error = 0.0;  // NaN when no oracle spectrum is available
  bool success = false;      // diag_error <= log10(eps_user)
  std::string failure_reason;  // empty unless the run threw
  std::vector<Complex> eigenvalues;  // at-infinity entries reported as 1e300
  std::vector<SplitRecord> splits;
  double efficiency = 1.0;
  double wall_time_s = 0.0;
};

struct Histogram {
  std::string name;
  std::vector<double> edges;   // size bins+1
  std::vector<long> counts;    // size bins
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RunRecord> runs;
  int failures = 0;             // rpd runs with success == false
  int comparator_failures = 0;
  std::vector<Histogram> histograms;
};

/// Executes rpd (and the comparator when configured) cfg.runs times on fresh
/// RNG paths, in parallel up to the thread cap.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes summary.json, runs.csv and histograms.csv into out_dir
/// (atomically: temp file + rename).
void emit(const ExperimentResult& result, const std::string& out_dir);

}  // namespace pencil
