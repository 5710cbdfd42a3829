#include <pencil/pseudospectra.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace pencil {

namespace {

constexpr double kLevelCap = 16.0;

CMatrix shifted(const Pencil& P, Complex z) { return P.A - z * P.B; }

double level_value(double smin, double scale) {
  if (smin <= 1e-16 * scale) return kLevelCap;
  return std::min(kLevelCap, std::log10(scale / smin));
}

}  // namespace

bool in_pseudospectrum(const Pencil& P, Complex z, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("in_pseudospectrum: eps must be positive");
  return smallest_sv(shifted(P, z)) <= eps * (1.0 + std::abs(z));
}

ScalarField pseudospec_levels(const Pencil& P, Region region, int resolution, int threads) {
  if (resolution < 2) throw std::invalid_argument("pseudospec_levels: resolution must be >= 2");
  ScalarField field{region, resolution, Eigen::MatrixXd::Zero(resolution, resolution)};
  const double dx = (region.re1 - region.re0) / (resolution - 1);
  const double dy = (region.im1 - region.im0) / (resolution - 1);
  parallel_for(resolution, threads, [&](int iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const Complex z(region.re0 + ix * dx, region.im0 + iy * dy);
      field.values(iy, ix) = level_value(smallest_sv(shifted(P, z)), 1.0 + std::abs(z));
    }
  });
  return field;
}

ScalarField pseudospec_levels_product(const Pencil& P, Region region, int resolution,
                                      int threads) {
  if (resolution < 2) throw std::invalid_argument("pseudospec_levels: resolution must be >= 2");
  const CMatrix X = solve(P.B, P.A);
  const CMatrix ident = CMatrix::Identity(X.rows(), X.cols());
  ScalarField field{region, resolution, Eigen::MatrixXd::Zero(resolution, resolution)};
  const double dx = (region.re1 - region.re0) / (resolution - 1);
  const double dy = (region.im1 - region.im0) / (resolution - 1);
  parallel_for(resolution, threads, [&](int iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const Complex z(region.re0 + ix * dx, region.im0 + iy * dy);
      field.values(iy, ix) = level_value(smallest_sv(X - z * ident), 1.0);
    }
  });
  return field;
}

bool bounded_check(const Pencil& P, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("bounded_check: eps must be positive");
  return eps < smallest_sv(P.B);
}

double bauer_fike_radius(const Pencil& P, double eps, double kappaV) {
  if (kappaV < 1.0) throw std::invalid_argument("bauer_fike_radius: kappaV must be >= 1");
  const double sminB = smallest_sv(P.B);
  if (!(eps > 0) || eps >= sminB)
    throw UnboundedPseudospectrumError("bauer_fike_radius: requires eps < sigma_min(B)");
  const double binv = 1.0 / sminB;
  const double binvA = spectral_norm(solve(P.B, P.A));
  return eps * kappaV * binv * (1.0 + (eps * binv + binvA) / (1.0 - eps * binv));
}

ShatterReport verify_shattering(const Pencil& P, const Grid& g, double eps, int samples_per_edge,
                                const std::vector<ProjectiveEigenvalue>& oracle_eigs,
                                bool fail_fast) {
  if (samples_per_edge < 2)
    throw std::invalid_argument("verify_shattering: samples_per_edge must be >= 2");
  ShatterReport report;
  report.min_grid_sigma_ratio = std::numeric_limits<double>::infinity();

  // each finite eigenvalue must sit in its own box
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& ev : oracle_eigs) {
    if (ev.is_infinite()) continue;
    const Complex lambda = ev.value();
    const BoxLocation loc = box_of(g, lambda);
    report.eigenvalue_boxes.emplace_back(lambda, loc);
    std::ostringstream msg;
    if (loc.kind == BoxLocation::Kind::outside) {
      msg << "eigenvalue " << lambda << " lies outside the grid";
      report.violations.push_back(msg.str());
    } else if (loc.kind == BoxLocation::Kind::on_line) {
      msg << "eigenvalue " << lambda << " lies on a grid line";
      report.violations.push_back(msg.str());
    } else if (!seen.insert({loc.i, loc.j}).second) {
      msg << "eigenvalue " << lambda << " shares box (" << loc.i << "," << loc.j
          << ") with another eigenvalue";
      report.violations.push_back(msg.str());
    }
    if (fail_fast && !report.violations.empty()) return report;
  }

  if (g.s1 > (1 << 20) || g.s2 > (1 << 20))
    throw std::invalid_argument("verify_shattering: grid too fine to sample segment-wise");

  // sample every segment of every line, endpoints included
  auto probe = [&](Complex z) {
    const double ratio = smallest_sv(shifted(P, z)) / (eps * (1.0 + std::abs(z)));
    report.min_grid_sigma_ratio = std::min(report.min_grid_sigma_ratio, ratio);
    if (ratio <= 1.0) {
      if (report.violations.size() < 64) {
        std::ostringstream msg;
        msg << "pseudospectrum touches the grid at z = " << z << " (ratio " << ratio << ")";
        report.violations.push_back(msg.str());
      }
      return false;
    }
    return true;
  };
  const double step = g.omega / (samples_per_edge - 1);
  for (std::int64_t i = 0; i <= g.s1; ++i) {
    const double x = g.re0() + g.omega * static_cast<double>(i);
    for (std::int64_t seg = 0; seg < g.s2; ++seg) {
      const double y0 = g.im0() + g.omega * static_cast<double>(seg);
      for (int t = 0; t < samples_per_edge; ++t)
        if (!probe(Complex(x, y0 + t * step)) && fail_fast) return report;
    }
  }
  for (std::int64_t j = 0; j <= g.s2; ++j) {
    const double y = g.im0() + g.omega * static_cast<double>(j);
    for (std::int64_t seg = 0; seg < g.s1; ++seg) {
      const double x0 = g.re0() + g.omega * static_cast<double>(seg);
      for (int t = 0; t < samples_per_edge; ++t)
        if (!probe(Complex(x0 + t * step, y)) && fail_fast) return report;
    }
  }

  report.shattered = report.violations.empty();
  return report;
}

double chordal_distance(const ProjectiveEigenvalue& l1, const ProjectiveEigenvalue& l2) {
  const Complex a1 = l1.alpha, b1 = l1.beta, a2 = l2.alpha, b2 = l2.beta;
  const double n1 = std::hypot(std::abs(a1), std::abs(b1));
  const double n2 = std::hypot(std::abs(a2), std::abs(b2));
  if (n1 == 0.0 || n2 == 0.0)
    throw DegeneratePointError("chordal_distance: <0,0> is not a projective point");
  return std::abs(a1 * b2 - b1 * a2) / (n1 * n2);
}

}  // namespace pencil
