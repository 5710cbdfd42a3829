#include <pencil/harness.hpp>

#include <pencil/serialize.hpp>
#include <pencil/substrate.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

namespace pencil {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Pencil normalize_joint(CMatrix A, CMatrix B) {
  const double s = std::max(spectral_norm(A), spectral_norm(B));
  if (s > 0.0) {
    A /= s;
    B /= s;
  }
  return Pencil(std::move(A), std::move(B));
}

}  // namespace

std::string recipe_name(Recipe r) {
  switch (r) {
    case Recipe::planted: return "planted";
    case Recipe::jordan: return "jordan";
    case Recipe::singular_b: return "singular_b";
    case Recipe::singular_pencil: return "singular_pencil";
    case Recipe::custom: return "custom";
  }
  return "unknown";
}

Recipe recipe_from_name(const std::string& name) {
  if (name == "planted") return Recipe::planted;
  if (name == "jordan") return Recipe::jordan;
  if (name == "singular_b") return Recipe::singular_b;
  if (name == "singular_pencil") return Recipe::singular_pencil;
  if (name == "custom") return Recipe::custom;
  throw std::invalid_argument("unknown experiment recipe: " + name);
}

std::vector<Complex> planted_spectrum(Index n) {
  std::vector<Complex> spec;
  spec.reserve(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j)
    spec.emplace_back(-2.0 + 4.0 * static_cast<double>(j) / static_cast<double>(n - 1), 0.0);
  return spec;
}

Pencil make_planted(Index n, RngStream rng) {
  if (n < 2) throw std::invalid_argument("make_planted: n must be >= 2");
  CMatrix lambda = CMatrix::Zero(n, n);
  const auto spec = planted_spectrum(n);
  for (Index j = 0; j < n; ++j) lambda(j, j) = spec[static_cast<std::size_t>(j)];
  for (int attempt = 0; attempt < 16; ++attempt) {
    const std::string tag = std::to_string(attempt);
    const CMatrix X = gaussian_matrix(n, n, rng.child("X-" + tag));
    const CMatrix Y = gaussian_matrix(n, n, rng.child("Y-" + tag));
    try {
      CMatrix A = right_divide(X * lambda, Y);
      CMatrix B = right_divide(X, Y);
      return normalize_joint(std::move(A), std::move(B));
    } catch (const SingularMatrixError&) {
      continue;  // resample
    }
  }
  throw Error("make_planted: repeated singular draws");
}

Pencil make_jordan(Index n) {
  if (n < 2) throw std::invalid_argument("make_jordan: n must be >= 2");
  CMatrix A = CMatrix::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) A(i, i + 1) = 1.0;
  return Pencil(std::move(A), CMatrix::Identity(n, n));  // norms are already 1
}

Pencil make_singular_b(Index n, RngStream rng) {
  if (n < 2) throw std::invalid_argument("make_singular_b: n must be >= 2");
  CMatrix A = gaussian_matrix(n, n, rng.child("A"));
  CMatrix B = gaussian_matrix(n, n, rng.child("B"));
  Eigen::JacobiSVD<CMatrix> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index last = n - 1;
  const double smin = svd.singularValues()(last);
  B -= smin * svd.matrixU().col(last) * svd.matrixV().col(last).adjoint();
  return normalize_joint(std::move(A), std::move(B));
}

Pencil make_singular_pencil() {
  CMatrix A(4, 4), B(4, 4);
  A << 2, -1, -5, -1,  //
      6, -2, -11, -2,  //
      5, 0, -2, 0,     //
      3, 1, 3, 1;
  B << 1, -1, -4, -2,   //
      2, -3, -12, -6,   //
      -1, -3, -11, -6,  //
      -2, -2, -7, -4;
  return normalize_joint(std::move(A), std::move(B));
}

DiagResult comparator_inversion(const Pencil& P, double eps_user, RngStream rng, Index cutoff) {
  const Index n = P.size();
  if (!(eps_user > 0.0 && eps_user < 1.0))
    throw std::invalid_argument("comparator_inversion: eps_user must lie in (0, 1)");
  const double gamma = eps_user / 16.0;

  DiagResult out;
  out.perturbed = Pencil(P.A + gamma * ginibre(n, rng.child("G1")),
                         P.B + gamma * ginibre(n, rng.child("G2")));
  const double omega = gamma / static_cast<double>(n);
  out.grid = random_grid(omega, rng.child("grid"));

  EigParams params;
  params.mode = Mode::practical;
  params.epsilon = params.beta = omega;
  params.alpha = 0.0;
  params.theta = 1.0 / static_cast<double>(n);
  params.n_global = static_cast<int>(n);
  params.cutoff = cutoff;
  out.params = params;

  // the inversion under test: everything downstream works with X explicitly
  const CMatrix X = solve(out.perturbed.B, out.perturbed.A);
  EigResult er = eig(Pencil(X, CMatrix::Identity(n, n)), out.grid, params, rng.child("eig"));

  out.T = std::move(er.T);
  out.stats = std::move(er.stats);
  out.D.resize(n);
  out.at_infinity.assign(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    if (std::abs(er.d2(i)) <= 1e-300) {
      out.at_infinity[static_cast<std::size_t>(i)] = true;
      out.D(i) = Complex(0, 0);
    } else {
      out.D(i) = er.d1(i) / er.d2(i);
    }
  }
  out.S = out.perturbed.B * out.T;
  return out;
}

namespace {

Pencil recipe_pencil(const ExperimentConfig& cfg, RngStream stream) {
  switch (cfg.name) {
    case Recipe::planted: return make_planted(cfg.n, stream);
    case Recipe::jordan: return make_jordan(cfg.n);
    case Recipe::singular_b: return make_singular_b(cfg.n, stream);
    case Recipe::singular_pencil: return make_singular_pencil();
    case Recipe::custom: {
      if (cfg.custom_a.empty() || cfg.custom_b.empty())
        throw std::invalid_argument("custom recipe requires matrix market paths");
      return normalize_joint(read_matrix_market(cfg.custom_a), read_matrix_market(cfg.custom_b));
    }
  }
  throw std::invalid_argument("unknown recipe");
}

std::vector<ProjectiveEigenvalue> try_oracle(const Pencil& P) {
  try {
    return ref_eig(P);
  } catch (const Error&) {
    return {};  // oracle unavailable (e.g. the singular pencil)
  }
}

RunRecord evaluate_run(const ExperimentConfig& cfg, const Pencil& P,
                       const std::vector<ProjectiveEigenvalue>& oracle, int index,
                       bool comparator, RngStream stream) {
  RunRecord rec;
  rec.index = index;
  rec.comparator = comparator;
  rec.diag_error = kNaN;
  rec.eigen_error = kNaN;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const DiagResult dr = comparator
                              ? comparator_inversion(P, cfg.eps_user, stream, cfg.cutoff)
                              : rpd(P, cfg.eps_user, cfg.mode, stream, cfg.cutoff);
    rec.diag_error = diag_error(P, dr);
    rec.success = rec.diag_error <= std::log10(cfg.eps_user);
    rec.splits = dr.stats.splits;
    rec.efficiency = efficiency_factor(dr.stats, cfg.n, cfg.cutoff);
    rec.eigenvalues.reserve(static_cast<std::size_t>(dr.D.size()));
    for (Index i = 0; i < dr.D.size(); ++i)
      rec.eigenvalues.push_back(dr.at_infinity[static_cast<std::size_t>(i)]
                                    ? Complex(1e300, 0.0)
                                    : dr.D(i));
    if (!oracle.empty()) rec.eigen_error = eigen_error(rec.eigenvalues, oracle);
  } catch (const std::exception& e) {
    rec.success = false;
    rec.failure_reason = e.what();
  }
  rec.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

Histogram build_histogram(std::string name, double lo, double hi, int bins,
                          const std::vector<double>& data) {
  Histogram h;
  h.name = std::move(name);
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (int b = 0; b <= bins; ++b)
    h.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  for (double v : data) {
    if (std::isnan(v)) continue;
    int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");
  ExperimentResult result;
  result.config = cfg;

  RngStream root(cfg.seed);
  const bool fresh_pencil_per_run = cfg.name == Recipe::singular_b;
  Pencil shared;
  std::vector<ProjectiveEigenvalue> shared_oracle;
  if (!fresh_pencil_per_run) {
    shared = recipe_pencil(cfg, root.child("pencil"));
    shared_oracle = try_oracle(shared);
  }

  const int per_run = cfg.comparator ? 2 : 1;
  result.runs.resize(static_cast<std::size_t>(cfg.runs) * per_run);
  parallel_for(cfg.runs, cfg.threads, [&](int i) {
    Pencil P = shared;
    std::vector<ProjectiveEigenvalue> oracle = shared_oracle;
    if (fresh_pencil_per_run) {
      P = recipe_pencil(cfg, root.child("pencil-" + std::to_string(i)));
      oracle = try_oracle(P);
    }
    const RngStream stream = root.child("run-" + std::to_string(i));
    result.runs[static_cast<std::size_t>(i) * per_run] =
        evaluate_run(cfg, P, oracle, i, false, stream);
    if (cfg.comparator)
      result.runs[static_cast<std::size_t>(i) * per_run + 1] =
          evaluate_run(cfg, P, oracle, i, true, stream);
  });

  std::vector<double> split_rel, efficiency, diag_errors;
  for (const auto& rec : result.runs) {
    if (rec.comparator) {
      if (!rec.success) ++result.comparator_failures;
      continue;
    }
    if (!rec.success) ++result.failures;
    for (const auto& s : rec.splits)
      if (s.m > 3) split_rel.push_back(static_cast<double>(s.k) / static_cast<double>(s.m));
    efficiency.push_back(rec.efficiency);
    diag_errors.push_back(rec.diag_error);
  }
  double eff_hi = 4.0;
  for (double e : efficiency)
    if (std::isfinite(e)) eff_hi = std::max(eff_hi, std::ceil(e));
  result.histograms.push_back(build_histogram("split_rel", 0.2, 0.8, 12, split_rel));
  result.histograms.push_back(build_histogram("efficiency", 1.0, eff_hi, 20, efficiency));
  result.histograms.push_back(build_histogram("diag_error", -17.0, -1.0, 32, diag_errors));
  return result;
}

void emit(const ExperimentResult& result, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  write_file_atomic(out_dir + "/summary.json", experiment_to_json(result).dump(2) + "\n");

  std::ostringstream runs_csv;
  runs_csv << "run,comparator,diag_error,eigen_error,success,n_splits,lines_total,efficiency,"
              "wall_time_s,failure_reason\n";
  for (const auto& rec : result.runs) {
    long lines = 0;
    for (const auto& s : rec.splits) lines += s.lines_checked;
    runs_csv << rec.index << "," << (rec.comparator ? 1 : 0) << "," << rec.diag_error << ","
             << rec.eigen_error << "," << (rec.success ? 1 : 0) << "," << rec.splits.size()
             << "," << lines << "," << rec.efficiency << "," << rec.wall_time_s << ",\""
             << rec.failure_reason << "\"\n";
  }
  write_file_atomic(out_dir + "/runs.csv", runs_csv.str());

  std::ostringstream hist_csv;
  hist_csv << "histogram,bin_lo,bin_hi,count\n";
  for (const auto& h : result.histograms)
    for (std::size_t b = 0; b < h.counts.size(); ++b)
      hist_csv << h.name << "," << h.edges[b] << "," << h.edges[b + 1] << "," << h.counts[b]
               << "\n";
  write_file_atomic(out_dir + "/histograms.csv", hist_csv.str());
}

}  // namespace pencil
