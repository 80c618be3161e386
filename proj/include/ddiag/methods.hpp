#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ddiag/triplet.hpp"

namespace ddiag {

namespace tol {
// Standardization rejects columns whose variance is below var * max variance.
inline constexpr double var = 1e-12;
// Largest admissible spectral condition number of S_xx in PCA-IV.
inline constexpr double cond = 1e12;
// Relative eigengap (to lambda_1) required at the PCA-IV truncation point.
inline constexpr double eigengap = 1e-9;
// Row weights must sum to one within this.
inline constexpr double weight_sum = 1e-10;
}  // namespace tol

// ---------------------------------------------------------------------------
// PCA

Vector uniform_weights(Eigen::Index n);

/// PCA as a diagram: X centered with the row weights, D = diag(weights),
/// Q = I (plain) or diag(1 / s_j^2) with s_j^2 the weighted variance of
/// column j (standardized).
Triplet pca_triplet(const Matrix& x, const Vector& weights, bool standardize);

/// Component scores, n x k. Column i is X Q v_i = sqrt(lambda_i) w_i, so the
/// D-weighted variance of component i is lambda_i.
Matrix principal_components(const Triplet& t, const DiagramEigen& e, Eigen::Index k);

// ---------------------------------------------------------------------------
// Correspondence analysis

/// Nonnegative integer counts. Rows and columns whose marginal is zero are
/// dropped at construction; their original indices are kept for reporting.
class ContingencyTable {
 public:
  explicit ContingencyTable(const Matrix& counts);

  const Matrix& counts() const { return counts_; }
  double total() const { return total_; }
  const std::vector<Eigen::Index>& kept_rows() const { return kept_rows_; }
  const std::vector<Eigen::Index>& kept_cols() const { return kept_cols_; }
  const std::vector<Eigen::Index>& dropped_rows() const { return dropped_rows_; }
  const std::vector<Eigen::Index>& dropped_cols() const { return dropped_cols_; }

 private:
  Matrix counts_;
  double total_ = 0.0;
  std::vector<Eigen::Index> kept_rows_;
  std::vector<Eigen::Index> kept_cols_;
  std::vector<Eigen::Index> dropped_rows_;
  std::vector<Eigen::Index> dropped_cols_;
};

/// The CA diagram (D_r^{-1} F D_c^{-1} - 1, D_c, D_r) with its marginals.
struct CaTriplet {
  Triplet triplet;
  Vector r;
  Vector c;
};

CaTriplet ca_triplet(const ContingencyTable& table);

// Pearson chi-square of the table against independence.
double ca_chi2(const ContingencyTable& table);

// ---------------------------------------------------------------------------
// PCA with respect to instrumental variables

/// Result of PCA-IV of Y (metric Q) on X, both with row metric D.
///
/// r_metric is R = S_xx^{-1} S_xy Q S_yx S_xx^{-1}, which may be only
/// semidefinite. Column k of b is beta_k / sqrt(lambda_k), where
/// X^T D X R beta_k = lambda_k beta_k and beta_k^T R beta_k = lambda_k; that
/// makes the columns of b R-orthonormal. m_metric = R B B^T R is the optimal
/// rank-q metric for X. eigen holds the leading rank_q eigenpairs of the
/// fitted diagram (X, R, D).
struct PcaivResult {
  Matrix r_metric;
  Matrix b;
  Matrix m_metric;
  // Present only when R is strictly positive definite.
  std::optional<Triplet> fitted_triplet;
  DiagramEigen eigen;
  // Number of positive eigenvalues of X^T D X R.
  Eigen::Index effective_rank = 0;
  // Full spectrum of X^T D X R, clamped at zero.
  Vector spectrum;
};

PcaivResult pcaiv(const Matrix& x, const Matrix& y, const SpdMatrix& q, const SpdMatrix& d,
                  Eigen::Index rank_q);

}  // namespace ddiag
