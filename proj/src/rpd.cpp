#include <pencil/rpd.hpp>

#include <pencil/pseudospectra.hpp>
#include <pencil/substrate.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pencil {

bool DiagResult::any_infinite() const {
  return std::find(at_infinity.begin(), at_infinity.end(), true) != at_infinity.end();
}

std::vector<Complex> DiagResult::finite_values() const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(D.size()));
  for (Index i = 0; i < D.size(); ++i)
    if (!at_infinity[static_cast<std::size_t>(i)]) out.push_back(D(i));
  return out;
}

DiagResult rpd(const Pencil& P, double eps_user, Mode mode, RngStream rng, Index cutoff) {
  const Index n = P.size();
  if (!(eps_user > 0.0 && eps_user < 1.0))
    throw std::invalid_argument("rpd: eps_user must lie in (0, 1)");
  const double norm_a = spectral_norm(P.A);
  const double norm_b = spectral_norm(P.B);
  if (norm_a > 1.0 + 1e-12 || norm_b > 1.0 + 1e-12)
    throw std::invalid_argument("rpd: requires ||A||_2, ||B||_2 <= 1 (use rpd_normalized)");

  const double gamma = eps_user / 16.0;
  EigParams params;
  params.mode = mode;
  params.n_global = static_cast<int>(n);
  params.cutoff = cutoff;
  params.theta = 1.0 / static_cast<double>(n);
  double omega;
  if (mode == Mode::theoretical) {
    const double nd = static_cast<double>(n);
    params.alpha = std::ceil(2.0 * std::log(1.0 / gamma) / std::log(nd) + 3.0) / 2.0;
    const double g5 = std::pow(gamma, 5.0);
    params.epsilon = g5 / (64.0 * std::pow(nd, (11.0 * params.alpha + 25.0) / 3.0) + g5);
    params.beta = eps_user * gamma * gamma / (24.0 * (1.0 + 4.0 * gamma)) *
                  std::pow(nd, -3.0 * params.alpha - 5.0);
    omega = std::pow(gamma, 4.0) / 4.0 * std::pow(nd, -(8.0 * params.alpha + 13.0) / 3.0);
  } else {
    params.alpha = 0.0;
    params.epsilon = params.beta = omega = gamma / static_cast<double>(n);
  }

  DiagResult out;
  out.perturbed = Pencil(P.A + gamma * ginibre(n, rng.child("G1")),
                         P.B + gamma * ginibre(n, rng.child("G2")));
  out.grid = random_grid(omega, rng.child("grid"));
  out.params = params;

  const double na = std::pow(static_cast<double>(n), params.alpha);
  const Pencil scaled(out.perturbed.A, na * out.perturbed.B);
  EigResult er = eig(scaled, out.grid, params, rng.child("eig"));

  out.T = std::move(er.T);
  out.stats = std::move(er.stats);
  out.D.resize(n);
  out.at_infinity.assign(static_cast<std::size_t>(n), false);
  for (Index i = 0; i < n; ++i) {
    if (std::abs(er.d2(i)) <= 1e-300) {
      out.at_infinity[static_cast<std::size_t>(i)] = true;
      out.D(i) = Complex(0, 0);
    } else {
      out.D(i) = na * er.d1(i) / er.d2(i);
    }
  }
  out.S = out.perturbed.B * out.T;
  return out;
}

NormalizedDiag rpd_normalized(const Pencil& P, double eps_user, Mode mode, RngStream rng,
                              Index cutoff) {
  const double s = std::max({spectral_norm(P.A), spectral_norm(P.B), 1.0});
  const Pencil scaled = s > 1.0 ? Pencil(P.A / s, P.B / s) : P;
  return {rpd(scaled, eps_user, mode, rng, cutoff), s};
}

DiagResiduals diag_residuals(const Pencil& P, const DiagResult& res) {
  if (res.any_infinite())
    throw Error("diag_residuals: result carries at-infinity eigenvalue entries");
  // S diag(D) first: at-infinity-scale entries of D are tamed by the matching
  // near-null S columns, keeping the product at working scale
  const CMatrix SD = res.S * res.D.asDiagonal();
  const CMatrix a_left = P.A - right_divide(SD, res.T);
  const CMatrix b_left = P.B - right_divide(res.S, res.T);
  const CMatrix a_right = P.A * res.T - SD;
  const CMatrix b_right = P.B * res.T - res.S;
  const auto log_clamped = [](double x) { return std::log10(std::max(x, 1e-17)); };
  return {log_clamped(std::max(spectral_norm(a_left), spectral_norm(b_left))),
          log_clamped(std::max(spectral_norm(a_right), spectral_norm(b_right)))};
}

double diag_error(const Pencil& P, const DiagResult& res) {
  return diag_residuals(P, res).left_log10;
}

double eigen_error(std::vector<Complex> approx, const std::vector<ProjectiveEigenvalue>& oracle) {
  std::vector<Complex> truth;
  std::size_t infinite = 0;
  for (const auto& ev : oracle) {
    if (ev.is_infinite())
      ++infinite;
    else
      truth.push_back(ev.value());
  }
  if (approx.size() != truth.size() + infinite)
    throw std::invalid_argument("LengthMismatch: approx and oracle sizes differ");
  const auto by_magnitude = [](Complex a, Complex b) { return std::abs(a) < std::abs(b); };
  std::sort(approx.begin(), approx.end(), by_magnitude);
  std::sort(truth.begin(), truth.end(), by_magnitude);
  approx.resize(approx.size() - infinite);  // drop the largest, paired with infinities
  if (truth.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += std::abs(approx[i] - truth[i]);
  return total / static_cast<double>(truth.size());
}

std::pair<double, double> forward_bound(const Pencil& P, double kappaV, double gap, double eps) {
  return {4.0 * gap * kappaV * eps, 24.0 * static_cast<double>(P.size()) * kappaV * eps};
}

namespace {

double optimal_pseudo_flops(Index m, Index cutoff, std::map<Index, double>& memo) {
  if (m <= cutoff || m <= 1) return 0.0;
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  const double m3 = static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(m);
  const Index hi = (m + 1) / 2;
  const double v =
      m3 + optimal_pseudo_flops(hi, cutoff, memo) + optimal_pseudo_flops(m - hi, cutoff, memo);
  memo[m] = v;
  return v;
}

}  // namespace

double efficiency_factor(const RunStats& stats, Index n, Index cutoff) {
  std::map<Index, double> memo;
  const double opt = optimal_pseudo_flops(n, cutoff, memo);
  double actual = 0.0;
  for (const auto& s : stats.splits)
    actual += static_cast<double>(s.m) * static_cast<double>(s.m) * static_cast<double>(s.m) *
              static_cast<double>(s.lines_checked);
  if (opt == 0.0 && actual == 0.0) return 1.0;
  if (opt == 0.0) return std::numeric_limits<double>::infinity();
  return actual / opt;
}

std::pair<double, double> gap_and_kappaV(const Pencil& P) {
  const double bnorm = spectral_norm(P.B);
  if (!(bnorm > 0.0) || smallest_sv(P.B) <= 1e-8 * bnorm)
    throw OracleUnavailableError("gap_and_kappaV: B is near-singular");
  const EigenSystem es = ref_eigensystem(P);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < es.values.size(); ++i)
    for (std::size_t j = i + 1; j < es.values.size(); ++j)
      gap = std::min(gap, std::abs(es.values[i].value() - es.values[j].value()));
  const RVector s = svd_values(es.vectors);
  const double smin = s(s.size() - 1);
  const double kappa = smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  return {gap, kappa};
}

}  // namespace pencil
