#include "ddiag/methods.hpp"

#include <cmath>
#include <string>

#include "metric_ops.hpp"

namespace ddiag {

Vector uniform_weights(Eigen::Index n) {
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

Triplet pca_triplet(const Matrix& x, const Vector& weights, bool standardize) {
  require_finite(x, "data matrix");
  if (x.rows() < 2) {
    throw Error(ErrorCode::TooFewRows, "PCA needs at least 2 rows, got " + std::to_string(x.rows()));
  }
  if (weights.size() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector length " +
                                                  std::to_string(weights.size()) + " but " +
                                                  std::to_string(x.rows()) + " rows");
  }
  if (!weights.allFinite() || (weights.array() <= 0.0).any()) {
    throw Error(ErrorCode::BadWeights, "row weights must be positive and finite");
  }
  if (std::abs(weights.sum() - 1.0) > tol::weight_sum) {
    throw Error(ErrorCode::BadWeights,
                "row weights sum to " + std::to_string(weights.sum()) + ", expected 1");
  }

  SpdMatrix d = SpdMatrix::diagonal(weights);
  Matrix centered = center_columns(x, d);
  if (!standardize) {
    return Triplet(std::move(centered), SpdMatrix::identity(x.cols()), std::move(d));
  }

  const Vector variances = (weights.asDiagonal() * centered.cwiseAbs2()).colwise().sum().transpose();
  const double largest = variances.size() > 0 ? variances.maxCoeff() : 0.0;
  for (Eigen::Index j = 0; j < variances.size(); ++j) {
    if (!(largest > 0.0) || variances(j) < tol::var * largest) {
      throw Error(ErrorCode::ZeroVarianceColumn,
                  "column " + std::to_string(j) + " has zero variance, cannot standardize");
    }
  }
  return Triplet(std::move(centered), SpdMatrix::diagonal(variances.cwiseInverse()), std::move(d));
}

Matrix principal_components(const Triplet& t, const DiagramEigen& e, Eigen::Index k) {
  if (k < 0 || k > e.rank) {
    throw Error(ErrorCode::RankExceeded, "requested " + std::to_string(k) +
                                             " components but rank is " + std::to_string(e.rank));
  }
  if (e.col_vectors.rows() != t.cols()) {
    throw Error(ErrorCode::RankMismatch, "eigendecomposition does not belong to this triplet");
  }
  // X Q v_i needs Q itself, never its factor L.
  return t.x() * (detail::apply(t.q(), e.col_vectors.leftCols(k)));
}

ContingencyTable::ContingencyTable(const Matrix& counts) {
  require_finite(counts, "contingency table");
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      const double v = counts(i, j);
      if (v < 0.0) {
        throw Error(ErrorCode::NegativeCount, "negative count " + std::to_string(v) + " at row " +
                                                  std::to_string(i) + ", column " +
                                                  std::to_string(j));
      }
      if (v != std::floor(v)) {
        throw Error(ErrorCode::NonIntegerCount, "non-integer count " + std::to_string(v) +
                                                    " at row " + std::to_string(i) + ", column " +
                                                    std::to_string(j));
      }
    }
  }
  const Vector row_sums = counts.rowwise().sum();
  const Vector col_sums = counts.colwise().sum().transpose();
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    (row_sums(i) > 0.0 ? kept_rows_ : dropped_rows_).push_back(i);
  }
  for (Eigen::Index j = 0; j < counts.cols(); ++j) {
    (col_sums(j) > 0.0 ? kept_cols_ : dropped_cols_).push_back(j);
  }
  counts_ = counts(kept_rows_, kept_cols_);
  total_ = counts_.sum();
  if (!(total_ > 0.0)) throw Error(ErrorCode::DegenerateTable, "contingency table has no counts");
}

CaTriplet ca_triplet(const ContingencyTable& table) {
  const Matrix& n = table.counts();
  if (n.rows() < 2 || n.cols() < 2) {
    throw Error(ErrorCode::DegenerateTable,
                "correspondence analysis needs at least 2 nonempty rows and columns, got " +
                    std::to_string(n.rows()) + "x" + std::to_string(n.cols()));
  }
  const double m = table.total();
  const Vector row_tot = n.rowwise().sum();
  const Vector col_tot = n.colwise().sum().transpose();

  // F_ij / (r_i c_j) - 1 = (m N_ij - R_i C_j) / (R_i C_j). Integer counts keep
  // the numerator exact, so independent tables give exactly zero.
  Matrix x(n.rows(), n.cols());
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    for (Eigen::Index j = 0; j < n.cols(); ++j) {
      const double expected = row_tot(i) * col_tot(j);
      x(i, j) = (m * n(i, j) - expected) / expected;
    }
  }
  Vector r = row_tot / m;
  Vector c = col_tot / m;
  Triplet t(std::move(x), SpdMatrix::diagonal(c), SpdMatrix::diagonal(r));
  return CaTriplet{std::move(t), std::move(r), std::move(c)};
}

double ca_chi2(const ContingencyTable& table) {
  const Matrix& n = table.counts();
  if (n.rows() < 2 || n.cols() < 2) {
    throw Error(ErrorCode::DegenerateTable,
                "chi-square needs at least 2 nonempty rows and columns");
  }
  const double m = table.total();
  const Vector row_tot = n.rowwise().sum();
  const Vector col_tot = n.colwise().sum().transpose();
  double chi2 = 0.0;
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    for (Eigen::Index j = 0; j < n.cols(); ++j) {
      const double expected = row_tot(i) * col_tot(j) / m;
      const double diff = n(i, j) - expected;
      chi2 += diff * diff / expected;
    }
  }
  return chi2;
}

PcaivResult pcaiv(const Matrix& x, const Matrix& y, const SpdMatrix& q, const SpdMatrix& d,
                  Eigen::Index rank_q) {
  require_finite(x, "explanatory table");
  require_finite(y, "response table");
  if (x.rows() != y.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "explanatory and response tables have " +
                                                  std::to_string(x.rows()) + " and " +
                                                  std::to_string(y.rows()) + " rows");
  }
  if (d.dim() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "row metric size differs from table rows");
  }
  if (q.dim() != y.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "response metric size differs from response columns");
  }
  if (rank_q < 0) throw Error(ErrorCode::RankExceeded, "rank must be nonnegative");

  const Matrix dx = detail::apply(d, x);
  const Matrix sxx = detail::symmetrize(x.transpose() * dx);
  const Matrix sxy = dx.transpose() * y;

  const SymEigen sxx_eig = sym_eigen(sxx);
  const double largest = sxx_eig.values.size() > 0 ? sxx_eig.values(0) : 0.0;
  const double smallest = sxx_eig.values.size() > 0 ? sxx_eig.values(sxx_eig.values.size() - 1) : 0.0;
  if (!(largest > 0.0) || !(smallest > 0.0) || largest / smallest > tol::cond) {
    throw Error(ErrorCode::SingularSxx, "X^T D X is singular or ill-conditioned (eigenvalues " +
                                            std::to_string(largest) + ", " +
                                            std::to_string(smallest) + ")");
  }
  const Matrix sxx_inv = sxx_eig.vectors * sxx_eig.values.cwiseInverse().asDiagonal() *
                         sxx_eig.vectors.transpose();
  const Matrix coef = sxx_inv * sxy;  // regression coefficients of Y on X

  PcaivResult out;
  out.r_metric = detail::symmetrize(coef * q.base() * coef.transpose());

  // X^T D X R is similar to R^{1/2} S_xx R^{1/2}; for lambda > 0 the vector
  // S_xx R^{1/2} z / lambda is an R-orthonormal eigenvector even when R is
  // singular.
  const Matrix r_half = psd_sqrt(out.r_metric);
  const SymEigen e = sym_eigen(detail::symmetrize(r_half * sxx * r_half));
  out.spectrum = detail::clamp_spectrum(e.values);
  out.effective_rank = effective_rank(out.spectrum);

  if (rank_q > out.effective_rank) {
    throw Error(ErrorCode::RankExceeded, "requested rank " + std::to_string(rank_q) +
                                             " exceeds effective rank " +
                                             std::to_string(out.effective_rank));
  }
  if (rank_q > 0 && rank_q < out.spectrum.size()) {
    const double gap = out.spectrum(rank_q - 1) - out.spectrum(rank_q);
    if (gap < tol::eigengap * out.spectrum(0)) {
      throw Error(ErrorCode::EigengapViolation,
                  "eigenvalues " + std::to_string(rank_q) + " and " + std::to_string(rank_q + 1) +
                      " are not separated; rank-" + std::to_string(rank_q) +
                      " solution is not unique");
    }
  }

  const Eigen::Index p = x.cols();
  const Eigen::Index n = x.rows();
  const Matrix sxx_r_half = sxx * r_half;
  const Matrix xr = x * out.r_metric;
  out.b.resize(p, rank_q);
  out.eigen.values = out.spectrum.head(rank_q);
  out.eigen.col_vectors.resize(p, rank_q);
  out.eigen.row_vectors.resize(n, rank_q);
  out.eigen.rank = rank_q;
  for (Eigen::Index k = 0; k < rank_q; ++k) {
    const double lambda = out.spectrum(k);
    const Vector v = sxx_r_half * e.vectors.col(k) / lambda;
    out.b.col(k) = v;
    out.eigen.col_vectors.col(k) = v;
    out.eigen.row_vectors.col(k) = xr * v / std::sqrt(lambda);
  }
  out.m_metric = detail::symmetrize(out.r_metric * out.b * out.b.transpose() * out.r_metric);

  try {
    out.fitted_triplet.emplace(x, SpdMatrix(out.r_metric), d);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NotPositiveDefinite) throw;
  }
  return out;
}

}  // namespace ddiag
