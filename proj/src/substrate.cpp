#include <pencil/substrate.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace pencil {

CMatrix ginibre(Index n, RngStream rng) {
  if (n < 1) throw ShapeError("ginibre: n must be >= 1");
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  CMatrix G(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      auto [x, y] = rng.next_gaussian_pair();
      G(i, j) = Complex(x, y) * scale;
    }
  return G;
}

CMatrix gaussian_matrix(Index rows, Index cols, RngStream rng) {
  CMatrix G(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) G(i, j) = rng.next_standard_complex();
  return G;
}

QrFactors qr_full(const CMatrix& M) {
  if (M.rows() < M.cols()) throw ShapeError("qr_full: rows must be >= cols");
  Eigen::HouseholderQR<CMatrix> qr(M);
  CMatrix Q = qr.householderQ() * CMatrix::Identity(M.rows(), M.rows());
  CMatrix R = CMatrix::Zero(M.rows(), M.cols());
  R.topRows(M.cols()) =
      qr.matrixQR().topRows(M.cols()).triangularView<Eigen::Upper>();
  return {std::move(Q), std::move(R)};
}

CMatrix qr_q_tail(const CMatrix& M, Index from) {
  Eigen::HouseholderQR<CMatrix> qr(M);
  CMatrix tail = CMatrix::Zero(M.rows(), M.rows() - from);
  for (Index j = from; j < M.rows(); ++j) tail(j, j - from) = 1.0;
  tail.applyOnTheLeft(qr.householderQ());
  return tail;
}

namespace {

CMatrix reverse_both(const CMatrix& M) { return M.rowwise().reverse().colwise().reverse(); }

}  // namespace

QlFactors ql_full(const CMatrix& M) {
  if (M.rows() < M.cols()) throw ShapeError("ql_full: rows must be >= cols");
  auto [Qr, Rr] = qr_full(reverse_both(M));
  CMatrix Q = reverse_both(Qr);
  CMatrix L = reverse_both(Rr);
  // exact lower-trapezoidal structure: zero when j > i - (rows - cols)
  const Index shift = M.rows() - M.cols();
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      if (j > i - shift) L(i, j) = Complex(0, 0);
  return {std::move(Q), std::move(L)};
}

RqFactors rq_full(const CMatrix& M) {
  if (M.rows() != M.cols()) throw ShapeError("rq_full: square input required");
  auto [Q, L] = ql_full(M.adjoint());
  return {L.adjoint(), Q.adjoint()};
}

RVector svd_values(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> svd(M);
  return svd.singularValues();
}

double smallest_sv(const CMatrix& M) {
  const RVector s = svd_values(M);
  return s.size() ? s(s.size() - 1) : 0.0;
}

double spectral_norm(const CMatrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  if (std::min(M.rows(), M.cols()) <= 64) {
    const RVector s = svd_values(M);
    return s(0);
  }
  // power iteration on M^H M with a deterministic start; plenty for norms
  // that feed log-scale metrics
  CVector v = CVector::Ones(M.cols());
  for (Index i = 0; i < M.cols(); ++i) v(i) += Complex(0, 1e-3 * double(i % 7));
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < 300; ++it) {
    CVector w = M * v;
    if (w.norm() == 0.0) return 0.0;
    v = M.adjoint() * w;
    const double nv = v.norm();
    if (nv == 0.0) return w.norm();
    v /= nv;
    const double next = std::sqrt(nv);  // v was unit, so |M^H M v| ~ sigma^2
    if (it > 4 && std::abs(next - sigma) <= 1e-12 * next) return next;
    sigma = next;
  }
  return sigma;
}

namespace {

void check_nonsingular(const CMatrix& M) {
  const double u = std::numeric_limits<double>::epsilon();
  const RVector s = svd_values(M);
  const double smin = s(s.size() - 1);
  const double smax = s(0);
  if (smin <= static_cast<double>(M.rows()) * u * smax)
    throw SingularMatrixError("solve: matrix is numerically singular (smin=" +
                              std::to_string(smin) + ", norm=" + std::to_string(smax) + ")");
}

}  // namespace

CMatrix solve(const CMatrix& M, const CMatrix& rhs) {
  if (M.rows() != M.cols()) throw ShapeError("solve: square matrix required");
  if (M.rows() != rhs.rows()) throw ShapeError("solve: shape mismatch");
  check_nonsingular(M);
  return Eigen::PartialPivLU<CMatrix>(M).solve(rhs);
}

CMatrix right_divide(const CMatrix& rhs, const CMatrix& M) {
  if (M.rows() != M.cols()) throw ShapeError("right_divide: square matrix required");
  if (rhs.cols() != M.rows()) throw ShapeError("right_divide: shape mismatch");
  check_nonsingular(M);
  CMatrix xt = Eigen::PartialPivLU<CMatrix>(M.transpose()).solve(rhs.transpose());
  return xt.transpose();
}

CMatrix matmul(const CMatrix& X, const CMatrix& Y) {
  if (X.cols() != Y.rows()) throw ShapeError("matmul: shape mismatch");
  return X * Y;
}

EigenSystem ref_eigensystem(const Pencil& P) {
  const Index n = P.size();
  EigenSystem out;
  const double bnorm = spectral_norm(P.B);
  const bool b_ok = bnorm > 0.0 && smallest_sv(P.B) > 1e-8 * bnorm;
  if (b_ok) {
    CMatrix M = solve(P.B, P.A);
    Eigen::ComplexEigenSolver<CMatrix> es(M);
    if (es.info() != Eigen::Success) throw Error("ref_eigensystem: eigensolver failed");
    out.vectors = es.eigenvectors();
    out.values.reserve(n);
    for (Index i = 0; i < n; ++i) out.values.push_back(ProjectiveEigenvalue::finite(es.eigenvalues()(i)));
  } else {
    // B near-singular: eigenvalues of A^{-1}B inverted; near-zero ones are
    // at-infinity directions of (A, B)
    CMatrix M = solve(P.A, P.B);
    Eigen::ComplexEigenSolver<CMatrix> es(M);
    if (es.info() != Eigen::Success) throw Error("ref_eigensystem: eigensolver failed");
    out.vectors = es.eigenvectors();
    const double tau = 1e-14 * spectral_norm(M);
    out.values.reserve(n);
    for (Index i = 0; i < n; ++i) {
      const Complex mu = es.eigenvalues()(i);
      if (std::abs(mu) <= tau)
        out.values.push_back(ProjectiveEigenvalue::at_infinity());
      else
        out.values.push_back({Complex(1.0, 0.0), mu});
    }
  }
  for (Index j = 0; j < n; ++j) {
    const double nrm = out.vectors.col(j).norm();
    if (nrm > 0) out.vectors.col(j) /= nrm;
  }
  return out;
}

std::vector<ProjectiveEigenvalue> ref_eig(const Pencil& P) { return ref_eigensystem(P).values; }

void write_matrix_market(const std::string& path, const CMatrix& M) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "%%MatrixMarket matrix array complex general\n";
  f << M.rows() << " " << M.cols() << "\n";
  char buf[64];
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", M(i, j).real(), M(i, j).imag());
      f << buf;
    }
  if (!f) throw IoError("write failed: " + path);
}

CMatrix read_matrix_market(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::string header;
  if (!std::getline(f, header)) throw IoError("empty file: " + path);
  std::istringstream hs(header);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "array" ||
      field != "complex" || symmetry != "general")
    throw IoError("expected 'matrix array complex general' header in " + path);
  std::string line;
  Index rows = 0, cols = 0;
  while (std::getline(f, line)) {
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream ls(line);
    if (ls >> rows >> cols) break;
  }
  if (rows < 1 || cols < 1) throw IoError("bad dimensions in " + path);
  CMatrix M(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      double re, im;
      if (!(f >> re >> im)) throw IoError("truncated data in " + path);
      M(i, j) = Complex(re, im);
    }
  return M;
}

}  // namespace pencil
