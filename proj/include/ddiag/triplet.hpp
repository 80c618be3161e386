#pragma once

#include "ddiag/linalg.hpp"

namespace ddiag {

/// A duality diagram (X, Q, D): an n x p data matrix together with an inner
/// product Q on the variable space R^p and an inner product D on the
/// individual space R^n.
class Triplet {
 public:
  Triplet(Matrix x, SpdMatrix q, SpdMatrix d);

  const Matrix& x() const { return x_; }
  const SpdMatrix& q() const { return q_; }
  const SpdMatrix& d() const { return d_; }
  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index cols() const { return x_.cols(); }

 private:
  Matrix x_;
  SpdMatrix q_;
  SpdMatrix d_;
};

Triplet make_triplet(Matrix x, SpdMatrix q, SpdMatrix d);

/// Joint eigenstructure of VQ (p x p) and WD (n x n).
///
/// values has length min(n, p), sorted non-increasing and clamped at zero.
/// col_vectors (p x r) are Q-orthonormal eigenvectors of VQ, row_vectors
/// (n x r) are D-orthonormal eigenvectors of WD, and for every retained k
/// (k < rank) they are linked by X Q v_k = sqrt(lambda_k) w_k. Columns at or
/// beyond rank span null directions and carry no transfer relation.
struct DiagramEigen {
  Vector values;
  Matrix col_vectors;
  Matrix row_vectors;
  Eigen::Index rank = 0;
};

/// Eigenstructure of a single operator W D with W symmetric nonnegative
/// definite; vectors are D-orthonormal.
struct OperatorEigen {
  Vector values;
  Matrix vectors;
  Eigen::Index rank = 0;
};

// V = X^T D X.
Matrix crossprod_v(const Triplet& t);

// W = X Q X^T. W D is the linear kernel operator on the individuals.
Matrix gram_w(const Triplet& t);

// Eigendecomposition of the smaller of VQ / WD through the symmetric
// similar matrix Q^{1/2} V Q^{1/2} (or D^{1/2} W D^{1/2}); the other side is
// filled in by transfer.
DiagramEigen diagram_eigen(const Triplet& t);

// X Q col_vectors[:, k] / sqrt(lambda_k) for every retained k. Throws
// RankMismatch when e has rank zero or does not fit t.
Matrix transfer_row_vectors(const Triplet& t, const DiagramEigen& e);

// tr(VQ) = tr(WD), evaluated on the smaller side.
double total_inertia(const Triplet& t);

// Eigenstructure of W D via D^{1/2} W D^{1/2}.
OperatorEigen operator_eigen(const Matrix& w, const SpdMatrix& d);

// Number of values above tol::rank * values[0] (zero when values[0] <= 0).
Eigen::Index effective_rank(const Vector& sorted_values);

// Subtracts from each column its weighted mean, weights being the row sums of
// D normalized to total one.
Matrix center_columns(const Matrix& x, const SpdMatrix& d);

// Unweighted column centering.
Matrix center_columns(const Matrix& x);

}  // namespace ddiag
