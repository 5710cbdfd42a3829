#include <pencil/eigsolve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <string>

namespace pencil {

namespace {

double log2_of(double x) { return std::log2(x); }

}  // namespace

DerivedParams compute_params(const EigParams& params, Index m, const Grid& g) {
  const double n = static_cast<double>(params.n_global);
  const double eps = params.epsilon;
  const double theta = params.theta;
  if (!(eps > 0) || !(theta > 0) || theta >= 1)
    throw std::invalid_argument("compute_params: need eps > 0 and theta in (0,1)");

  DerivedParams d{};
  const double smax = static_cast<double>(std::max(g.s1, g.s2));
  d.zeta = 2.0 * (std::floor(log2_of(smax)) + 1.0);

  const double na = std::pow(n, params.alpha);
  const double depth = std::log(n) / std::log(5.0 / 4.0);  // log_{5/4}(n)
  const double n2a3 = std::pow(n, 2.0 * params.alpha + 3.0);
  d.eta = std::min(4.0 * std::numbers::pi / (315.0 * std::sqrt(8.0)) * params.beta * eps * eps /
                       (g.omega * na),
                   n > 1 ? 1.0 / (2.0 * depth) : 0.5);
  d.delta = std::min({std::sqrt(theta / 10.0) * eps * eps / (7200.0 * n2a3),
                      theta / (2.0 * (theta + 10.0 * std::pow(n, 6.0) * d.zeta)),
                      std::sqrt(theta / 10.0) * d.eta * d.eta / (288.0 * n2a3)});

  if (params.mode == Mode::practical) {
    if (d.delta < 0 || !std::isfinite(d.delta)) d.delta = 0.0;
    d.p = static_cast<int>(std::ceil(log2_of(n / eps)));
    d.rank_threshold = std::sqrt(theta / (10.0 * d.zeta)) * (1.0 - d.delta);
    return d;
  }

  if (!(d.eta > 0.0) || !(d.delta > 0.0))
    throw ParameterUnderflowError(
        "compute_params: eta or delta underflow in theoretical mode (n too large for "
        "double precision); use practical mode");

  // four-way maximum for the squaring depth
  const double x = eps / (105.0 * na);  // tiny; log2(1-x) via log1p
  const double log2_1mx = std::log1p(-x) / std::numbers::ln2;
  if (!(log2_1mx < 0.0))
    throw ParameterUnderflowError("compute_params: eps/(105 n^alpha) underflows");
  const double t1 = log2_of(105.0 * na / eps - 1.0);
  const double t2 = -2.0 * log2_of(-0.5 * log2_1mx);
  const double num = d.delta * std::numbers::pi * eps;
  const double den = 12.0 * na * static_cast<double>(m) * g.omega + num;
  double t3 = -std::numeric_limits<double>::infinity();
  if (num > 0.0 && num < den) t3 = 1.0 + log2_of(log2_of(num / den) / log2_1mx);
  else if (!(num > 0.0))
    throw ParameterUnderflowError("compute_params: delta*pi*eps underflows in theoretical mode");
  const double praw = std::max({7.0, t1, t2, t3});
  if (!std::isfinite(praw) || praw > 1e6)
    throw ParameterUnderflowError("compute_params: squaring depth overflows");
  d.p = static_cast<int>(std::ceil(praw));
  d.rank_threshold = std::sqrt(theta / (10.0 * d.zeta)) * (1.0 - d.delta) / std::pow(n, 3.0);
  return d;
}

EigResult assemble(const CMatrix& UR_k, const CMatrix& UR_mk, EigResult left, EigResult right) {
  const Index k = UR_k.cols();
  const Index mk = UR_mk.cols();
  if (UR_k.rows() != UR_mk.rows() || left.T.rows() != k || right.T.rows() != mk)
    throw ShapeError("assemble: block shapes do not conform");
  EigResult out;
  out.T.resize(UR_k.rows(), k + mk);
  out.T.leftCols(k) = UR_k * left.T;
  out.T.rightCols(mk) = UR_mk * right.T;
  out.d1.resize(k + mk);
  out.d1 << left.d1, right.d1;
  out.d2.resize(k + mk);
  out.d2 << left.d2, right.d2;
  out.stats = std::move(left.stats);
  out.stats.splits.insert(out.stats.splits.end(), right.stats.splits.begin(),
                          right.stats.splits.end());
  out.stats.pseudo_flops += right.stats.pseudo_flops;
  out.stats.delegated += right.stats.delegated;
  return out;
}

namespace {

struct AcceptedLine {
  GridLine line;
  Index k = 0;
};

bool split_ok(Index k, Index m) { return 5 * k >= m && 5 * k <= 4 * m; }

EigResult eig_impl(const Pencil& P, const Grid& g, const EigParams& params, RngStream rng,
                   int depth) {
  const Index m = P.size();
  EigResult out;

  if (m <= params.cutoff || m == 1) {
    if (m == 1) {
      out.T = CMatrix::Identity(1, 1);
      out.d1 = P.A.diagonal();
      out.d2 = P.B.diagonal();
      return out;
    }
    const EigenSystem es = ref_eigensystem(P);
    out.T = es.vectors;
    out.d1.resize(m);
    out.d2.resize(m);
    for (Index i = 0; i < m; ++i) {
      out.d1(i) = es.values[i].alpha;
      out.d2(i) = es.values[i].beta;
    }
    out.stats.delegated = 1;
    return out;
  }

  const DerivedParams dp = compute_params(params, m, g);

  long lines_checked = 0;
  std::optional<AcceptedLine> found;
  std::optional<Pencil> found_mobius;
  std::set<std::pair<int, std::int64_t>> probed;

  auto probe = [&](const GridLine& line) {
    Pencil mob = mobius_right(P, line.coordinate, line.orientation);
    const IrsOutput io = irs(mob.A, mob.B, dp.p);
    const std::string label =
        std::string(line.orientation == Orientation::vertical ? "line-v-" : "line-h-") +
        std::to_string(line.index);
    const GrurvResult gr = grurv2(io.Ap + io.Bp, io.Ap, -1, +1, rng.child(label));
    ++lines_checked;
    probed.insert({line.orientation == Orientation::vertical ? 0 : 1, line.index});
    const Index k = rank_count(gr.R1, gr.R2, dp.rank_threshold);
    if (split_ok(k, m)) {
      found = AcceptedLine{line, k};
      found_mobius = std::move(mob);
    }
    return k;
  };

  // steered binary descent per orientation: k counts eigenvalues on the far
  // (larger-coordinate) side of the line, so too many means move up
  for (Orientation o : {Orientation::vertical, Orientation::horizontal}) {
    LineSearchCursor cursor(g, o);
    while (!cursor.exhausted() && !found) {
      const GridLine line = cursor.current();
      const Index k = probe(line);
      if (found) break;
      if (5 * k > 4 * m)
        cursor.steer_high();
      else
        cursor.steer_low();
    }
    if (found) break;
  }

  // the descent is complete when every k is counted correctly; a wrong count
  // can strand it, so sweep the remaining lines of small grids before failing
  if (!found && std::max(g.s1, g.s2) <= (1 << 12)) {
    for (Orientation o : {Orientation::vertical, Orientation::horizontal}) {
      for (const GridLine& line : search_order(g, o)) {
        if (probed.count({o == Orientation::vertical ? 0 : 1, line.index})) continue;
        probe(line);
        if (found) break;
      }
      if (found) break;
    }
  }

  if (!found) throw NoSplitFoundError(m, depth, lines_checked);

  const GridLine line = found->line;
  const Index k = found->k;

  const DeflatePair hi = deflate(*found_mobius, dp.p, k, rng.child("defl-hi"));
  const Pencil mob_lo = mobius_left(P, line.coordinate, line.orientation);
  const DeflatePair lo = deflate(mob_lo, dp.p, m - k, rng.child("defl-lo"));

  const Pencil sub_hi(hi.UL.adjoint() * P.A * hi.UR, hi.UL.adjoint() * P.B * hi.UR);
  const Pencil sub_lo(lo.UL.adjoint() * P.A * lo.UR, lo.UL.adjoint() * P.B * lo.UR);

  EigParams child = params;
  if (params.mode == Mode::theoretical) {
    child.epsilon = params.epsilon * 4.0 / 5.0;
    child.beta = params.beta / 3.0;
  }

  EigResult res_hi = eig_impl(sub_hi, half_grid(g, line, Side::right), child, rng.child("R"),
                              depth + 1);
  EigResult res_lo = eig_impl(sub_lo, half_grid(g, line, Side::left), child, rng.child("L"),
                              depth + 1);

  EigResult merged = assemble(hi.UR, lo.UR, std::move(res_hi), std::move(res_lo));
  SplitRecord rec{m, k, lines_checked, line.orientation, depth};
  merged.stats.splits.insert(merged.stats.splits.begin(), rec);
  merged.stats.pseudo_flops +=
      static_cast<double>(m) * static_cast<double>(m) * static_cast<double>(m) *
      static_cast<double>(lines_checked);
  return merged;
}

}  // namespace

EigResult eig(const Pencil& P, const Grid& g, const EigParams& params, RngStream rng) {
  if (params.cutoff < 1) throw std::invalid_argument("eig: cutoff must be >= 1");
  return eig_impl(P, g, params, rng, 0);
}

}  // namespace pencil
