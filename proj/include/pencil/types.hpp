#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace pencil {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct NoSplitFoundError : Error {
  NoSplitFoundError(Index m, int depth, long lines_checked)
      : Error("NoSplitFound: no grid line splits the spectrum of the " + std::to_string(m) + "x" +
              std::to_string(m) + " subproblem (depth " + std::to_string(depth) + ", " +
              std::to_string(lines_checked) + " lines checked)"),
        m(m),
        depth(depth),
        lines_checked(lines_checked) {}
  Index m;
  int depth;
  long lines_checked;
};

struct ParameterUnderflowError : Error {
  using Error::Error;
};

struct OracleUnavailableError : Error {
  using Error::Error;
};

struct UnboundedPseudospectrumError : Error {
  using Error::Error;
};

struct DegeneratePointError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

/// A square matrix pencil (A, B): the family A - xB.
struct Pencil {
  CMatrix A;
  CMatrix B;

  Pencil() = default;
  Pencil(CMatrix a, CMatrix b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
      throw ShapeError("Pencil requires square matrices of equal size, got " +
                       std::to_string(A.rows()) + "x" + std::to_string(A.cols()) + " and " +
                       std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
    if (!A.allFinite() || !B.allFinite()) throw Error("Pencil entries must be finite");
  }

  Index size() const { return A.rows(); }
};

/// Generalized eigenvalue as a projective line <alpha, beta>, lambda = alpha/beta.
/// beta == 0 encodes an eigenvalue at infinity.
struct ProjectiveEigenvalue {
  Complex alpha{0.0, 0.0};
  Complex beta{1.0, 0.0};

  static ProjectiveEigenvalue finite(Complex lambda) { return {lambda, Complex(1.0, 0.0)}; }
  static ProjectiveEigenvalue at_infinity() { return {Complex(1.0, 0.0), Complex(0.0, 0.0)}; }

  bool is_infinite() const { return beta == Complex(0.0, 0.0); }
  Complex value() const { return alpha / beta; }
};

}  // namespace pencil
