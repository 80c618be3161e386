#include "ddiag/triplet.hpp"

#include <cmath>
#include <string>

#include "metric_ops.hpp"

namespace ddiag {

Triplet::Triplet(Matrix x, SpdMatrix q, SpdMatrix d)
    : x_(std::move(x)), q_(std::move(q)), d_(std::move(d)) {
  require_finite(x_, "data matrix");
  if (q_.dim() != x_.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "column metric is " + std::to_string(q_.dim()) + "x" + std::to_string(q_.dim()) +
                    " but data has " + std::to_string(x_.cols()) + " columns");
  }
  if (d_.dim() != x_.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "row metric is " + std::to_string(d_.dim()) + "x" + std::to_string(d_.dim()) +
                    " but data has " + std::to_string(x_.rows()) + " rows");
  }
}

Triplet make_triplet(Matrix x, SpdMatrix q, SpdMatrix d) {
  return Triplet(std::move(x), std::move(q), std::move(d));
}

Matrix crossprod_v(const Triplet& t) {
  return detail::symmetrize(t.x().transpose() * detail::apply(t.d(), t.x()));
}

Matrix gram_w(const Triplet& t) {
  return detail::symmetrize(t.x() * detail::apply(t.q(), t.x().transpose()));
}

Eigen::Index effective_rank(const Vector& sorted_values) {
  if (sorted_values.size() == 0 || !(sorted_values(0) > 0.0)) return 0;
  const double cut = tol::rank * sorted_values(0);
  Eigen::Index r = 0;
  while (r < sorted_values.size() && sorted_values(r) > cut) ++r;
  return r;
}

namespace detail {

Vector clamp_spectrum(const Vector& values) {
  Vector out = values;
  if (out.size() == 0) return out;
  const double scale = std::max(std::abs(out(0)), std::abs(out(out.size() - 1)));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < 0.0) {
      if (out(i) < -tol::eig * scale) {
        throw Error(ErrorCode::ConvergenceFailure,
                    "operator has eigenvalue " + std::to_string(out(i)) +
                        " below zero beyond tolerance");
      }
      out(i) = 0.0;
    }
  }
  return out;
}

Matrix complete_basis(const Matrix& retained, const SpdMatrix& metric, Eigen::Index total) {
  const Eigen::Index n = metric.dim();
  const Eigen::Index kept = retained.cols();
  Matrix out(n, total);
  out.leftCols(kept) = retained;
  if (total == kept) return out;

  // Work in coordinates where the metric is the identity.
  const Matrix sqrt_m = metric.power(0.5);
  Matrix extra;
  if (kept == 0) {
    extra = Matrix::Identity(n, total);
  } else {
    const Matrix ortho = sqrt_m * retained;
    Eigen::HouseholderQR<Matrix> qr(ortho);
    const Matrix full = qr.householderQ() * Matrix::Identity(n, n);
    extra = full.middleCols(kept, total - kept);
  }
  normalize_signs(extra);
  out.rightCols(total - kept) = metric.power(-0.5) * extra;
  return out;
}

}  // namespace detail

DiagramEigen diagram_eigen(const Triplet& t) {
  const Eigen::Index n = t.rows();
  const Eigen::Index p = t.cols();
  const Eigen::Index r = std::min(n, p);
  const Matrix& x = t.x();

  DiagramEigen out;
  if (p <= n) {
    const Matrix q_half = t.q().power(0.5);
    const Matrix sym = detail::symmetrize(q_half * crossprod_v(t) * q_half);
    const SymEigen e = sym_eigen(sym);
    out.values = detail::clamp_spectrum(e.values);
    out.rank = effective_rank(out.values);
    out.col_vectors = t.q().power(-0.5) * e.vectors;

    const Matrix xq = x * t.q().base();
    Matrix kept(n, out.rank);
    for (Eigen::Index k = 0; k < out.rank; ++k) {
      kept.col(k) = xq * out.col_vectors.col(k) / std::sqrt(out.values(k));
    }
    out.row_vectors = detail::complete_basis(kept, t.d(), r);
  } else {
    const Matrix d_half = t.d().power(0.5);
    const Matrix sym = detail::symmetrize(d_half * gram_w(t) * d_half);
    const SymEigen e = sym_eigen(sym);
    const Vector values = detail::clamp_spectrum(e.values);
    out.values = values.head(r);
    out.rank = effective_rank(out.values);
    out.row_vectors = t.d().power(-0.5) * e.vectors.leftCols(r);

    // X^T D w is an eigenvector of VQ with Q-norm^2 = lambda.
    const Matrix xtd = x.transpose() * t.d().base();
    Matrix kept(p, out.rank);
    for (Eigen::Index k = 0; k < out.rank; ++k) {
      kept.col(k) = xtd * out.row_vectors.col(k) / std::sqrt(out.values(k));
    }
    out.col_vectors = detail::complete_basis(kept, t.q(), r);
  }
  return out;
}

Matrix transfer_row_vectors(const Triplet& t, const DiagramEigen& e) {
  if (e.rank == 0) throw Error(ErrorCode::RankMismatch, "transfer requires a nonzero eigenvalue");
  if (e.col_vectors.rows() != t.cols() || e.rank > e.values.size() ||
      e.rank > e.col_vectors.cols()) {
    throw Error(ErrorCode::RankMismatch, "eigendecomposition does not belong to this triplet");
  }
  const Matrix xq = t.x() * t.q().base();
  Matrix out(t.rows(), e.rank);
  for (Eigen::Index k = 0; k < e.rank; ++k) {
    const double lambda = e.values(k);
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::RankMismatch, "retained eigenvalue is not positive");
    }
    out.col(k) = xq * e.col_vectors.col(k) / std::sqrt(lambda);
  }
  return out;
}

double total_inertia(const Triplet& t) {
  if (t.cols() <= t.rows()) {
    return crossprod_v(t).cwiseProduct(t.q().base()).sum();
  }
  return gram_w(t).cwiseProduct(t.d().base()).sum();
}

OperatorEigen operator_eigen(const Matrix& w, const SpdMatrix& d) {
  if (w.rows() != d.dim() || w.cols() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator and row metric sizes differ");
  }
  const Matrix d_half = d.power(0.5);
  const SymEigen e = sym_eigen(detail::symmetrize(d_half * w * d_half));
  OperatorEigen out;
  out.values = detail::clamp_spectrum(e.values);
  out.rank = effective_rank(out.values);
  out.vectors = d.power(-0.5) * e.vectors;
  return out;
}

Matrix center_columns(const Matrix& x, const SpdMatrix& d) {
  if (d.dim() != x.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "row metric size differs from data rows");
  }
  Vector weights = d.base().rowwise().sum();
  weights /= weights.sum();
  const Eigen::RowVectorXd means = weights.transpose() * x;
  return x.rowwise() - means;
}

Matrix center_columns(const Matrix& x) {
  if (x.rows() == 0) return x;
  const Eigen::RowVectorXd means = x.colwise().mean();
  return x.rowwise() - means;
}

}  // namespace ddiag
