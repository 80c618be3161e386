#pragma once

#include <Eigen/Dense>

#include "ddiag/error.hpp"

namespace ddiag {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
// ||A - A^T||_F / ||A||_F above this is NotSymmetric.
inline constexpr double sym = 1e-8;
// Smallest eigenvalue must exceed spd * largest.
inline constexpr double spd = 1e-12;
inline constexpr double eig = 1e-10;
// Eigenvalues at or below rank * largest are treated as zero.
inline constexpr double rank = 1e-10;
}  // namespace tol

// Throws NonFiniteValue if any entry is NaN or infinite. `what` names the
// argument in the error message.
void require_finite(const Matrix& a, const char* what);

// Relative asymmetry ||A - A^T||_F / ||A||_F (0 for the zero matrix).
double asymmetry(const Matrix& a);

/// Eigendecomposition of a real symmetric matrix.
///
/// `values` are sorted non-increasing and column k of `vectors` is the unit
/// eigenvector for values[k]. Each column is sign-normalized so that its entry
/// of largest magnitude is positive (lowest index wins ties).
struct SymEigen {
  Vector values;
  Matrix vectors;
};

SymEigen sym_eigen(const Matrix& a);

// Applies the sign convention of SymEigen to every column of `vectors`.
void normalize_signs(Matrix& vectors);

/// A symmetric, strictly positive definite matrix, used as an inner-product
/// metric. The eigendecomposition is computed once at construction so that
/// matrix powers are cheap afterwards.
class SpdMatrix {
 public:
  // Validates `a` (square, finite, symmetric, positive definite). The stored
  // base is the symmetrized (A + A^T) / 2.
  explicit SpdMatrix(const Matrix& a);

  static SpdMatrix identity(Eigen::Index dim);
  static SpdMatrix diagonal(const Vector& entries);

  Eigen::Index dim() const { return base_.rows(); }
  const Matrix& base() const { return base_; }
  const SymEigen& eigen() const { return eigen_; }
  bool is_diagonal() const { return diagonal_; }

  // Q^a via the eigendecomposition: eigenvectors kept, eigenvalues mapped
  // to lambda^a. power(0) is exactly the identity.
  Matrix power(double exponent) const;

 private:
  Matrix base_;
  SymEigen eigen_;
  bool diagonal_ = false;
};

SpdMatrix spd_check(const Matrix& a);

// Symmetric square root L = Q^{1/2}, so that Q = L L^T with L = L^T.
Matrix spd_factor(const SpdMatrix& q);

Matrix spd_power(const SpdMatrix& q, double exponent);

// Square root of a symmetric nonnegative definite matrix. Eigenvalues within
// -tol::eig * largest are clamped to zero; anything more negative throws
// NotNonnegativeDefinite.
Matrix psd_sqrt(const Matrix& a);

// Throws NotNonnegativeDefinite unless every eigenvalue of the symmetric
// matrix `a` is >= -tolerance * max(|largest|, |smallest|).
void require_nonnegative_definite(const Matrix& a, double tolerance, const char* what);

}  // namespace ddiag
