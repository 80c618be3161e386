#include "ddiag/linalg.hpp"

#include <cmath>
#include <string>

namespace ddiag {

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) {
    throw Error(ErrorCode::NonFiniteValue, std::string(what) + " contains NaN or infinite entries");
  }
}

double asymmetry(const Matrix& a) {
  const double norm = a.norm();
  if (norm == 0.0) return 0.0;
  return (a - a.transpose()).norm() / norm;
}

void normalize_signs(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double v = std::abs(vectors(i, j));
      // strict comparison keeps the lowest index on ties
      if (v > best_abs) {
        best_abs = v;
        best = i;
      }
    }
    if (vectors.rows() > 0 && vectors(best, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

SymEigen sym_eigen(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NonSquare, "sym_eigen: matrix is " + std::to_string(a.rows()) + "x" +
                                          std::to_string(a.cols()));
  }
  require_finite(a, "sym_eigen input");
  const double asym = asymmetry(a);
  if (asym > tol::sym) {
    throw Error(ErrorCode::NotSymmetric,
                "sym_eigen: relative asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  const Eigen::Index n = a.rows();
  SymEigen out;
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "sym_eigen: eigensolver did not converge");
  }
  // Eigen returns ascending order
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  normalize_signs(out.vectors);
  return out;
}

SpdMatrix::SpdMatrix(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NonSquare, "metric must be square, got " + std::to_string(a.rows()) +
                                          "x" + std::to_string(a.cols()));
  }
  if (a.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "metric must have dim >= 1");
  require_finite(a, "metric");
  const double asym = asymmetry(a);
  if (asym > tol::sym) {
    throw Error(ErrorCode::NotSymmetric,
                "metric relative asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  base_ = 0.5 * (a + a.transpose());
  eigen_ = sym_eigen(base_);
  const double largest = eigen_.values(0);
  const double smallest = eigen_.values(eigen_.values.size() - 1);
  if (!(largest > 0.0) || smallest <= tol::spd * largest) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "metric smallest eigenvalue " + std::to_string(smallest) +
                    " is not above tolerance relative to largest " + std::to_string(largest));
  }
  diagonal_ = base_.isDiagonal(0.0);
}

SpdMatrix SpdMatrix::identity(Eigen::Index dim) {
  return SpdMatrix(Matrix::Identity(dim, dim));
}

SpdMatrix SpdMatrix::diagonal(const Vector& entries) {
  return SpdMatrix(Matrix(entries.asDiagonal()));
}

Matrix SpdMatrix::power(double exponent) const {
  const Eigen::Index n = dim();
  if (exponent == 0.0) return Matrix::Identity(n, n);
  if (exponent == 1.0) return base_;
  if (diagonal_) {
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) out(i, i) = std::pow(base_(i, i), exponent);
    return out;
  }
  Vector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) mapped(i) = std::pow(eigen_.values(i), exponent);
  Matrix out = eigen_.vectors * mapped.asDiagonal() * eigen_.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

SpdMatrix spd_check(const Matrix& a) { return SpdMatrix(a); }

Matrix spd_factor(const SpdMatrix& q) { return q.power(0.5); }

Matrix spd_power(const SpdMatrix& q, double exponent) { return q.power(exponent); }

Matrix psd_sqrt(const Matrix& a) {
  const SymEigen e = sym_eigen(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return Matrix(0, 0);
  const double scale = std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
  Vector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double v = e.values(i);
    if (v < 0.0) {
      if (v < -tol::eig * scale) {
        throw Error(ErrorCode::NotNonnegativeDefinite,
                    "matrix has eigenvalue " + std::to_string(v) + " below zero");
      }
      v = 0.0;
    }
    roots(i) = std::sqrt(v);
  }
  Matrix out = e.vectors * roots.asDiagonal() * e.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

void require_nonnegative_definite(const Matrix& a, double tolerance, const char* what) {
  const SymEigen e = sym_eigen(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return;
  const double scale = std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
  if (e.values(n - 1) < -tolerance * scale) {
    throw Error(ErrorCode::NotNonnegativeDefinite,
                std::string(what) + " has negative eigenvalue " + std::to_string(e.values(n - 1)));
  }
}

}  // namespace ddiag
