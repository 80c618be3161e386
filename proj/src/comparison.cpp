#include "ddiag/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "metric_ops.hpp"

namespace ddiag {

namespace {

void check_operator(const Matrix& w, const SpdMatrix& d, const char* what) {
  if (w.rows() != d.dim() || w.cols() != d.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is " + std::to_string(w.rows()) + "x" +
                    std::to_string(w.cols()) + " but row metric has dim " +
                    std::to_string(d.dim()));
  }
  require_finite(w, what);
  if (asymmetry(w) > tol::sym) {
    throw Error(ErrorCode::NotSymmetric, std::string(what) + " is not symmetric");
  }
}

// D^{1/2} W D^{1/2}: tr(W1 D W2 D) is the Frobenius product of these.
Matrix symmetrized(const Matrix& w, const Matrix& d_half) {
  return detail::symmetrize(d_half * w * d_half);
}

double frobenius(const Matrix& a, const Matrix& b) { return a.cwiseProduct(b).sum(); }

double rv_from(const Matrix& s1, const Matrix& s2) {
  const double cross = frobenius(s1, s2);
  const double value = cross / std::sqrt(frobenius(s1, s1) * frobenius(s2, s2));
  return std::clamp(value, 0.0, 1.0);
}

// Nonnegative definiteness and nonzero checks in the symmetrized coordinates.
void check_rv_operand(const Matrix& s, const std::string& what) {
  if (!(frobenius(s, s) > 0.0)) {
    throw Error(ErrorCode::ZeroOperator, what + " is the zero operator");
  }
  require_nonnegative_definite(s, tol::eig, what.c_str());
}

}  // namespace

double covv(const Matrix& w1, const Matrix& w2, const SpdMatrix& d) {
  check_operator(w1, d, "first operator");
  check_operator(w2, d, "second operator");
  const Matrix d_half = d.power(0.5);
  return frobenius(symmetrized(w1, d_half), symmetrized(w2, d_half));
}

double rv(const Matrix& w1, const Matrix& w2, const SpdMatrix& d) {
  check_operator(w1, d, "first operator");
  check_operator(w2, d, "second operator");
  const Matrix d_half = d.power(0.5);
  const Matrix s1 = symmetrized(w1, d_half);
  const Matrix s2 = symmetrized(w2, d_half);
  check_rv_operand(s1, "first operator");
  check_rv_operand(s2, "second operator");
  return rv_from(s1, s2);
}

DiagramCollection::DiagramCollection(SpdMatrix d, std::vector<Triplet> diagrams,
                                     std::vector<std::string> labels)
    : d_(std::move(d)), diagrams_(std::move(diagrams)), labels_(std::move(labels)) {
  if (diagrams_.size() < 2) {
    throw Error(ErrorCode::InvalidConfig, "a diagram collection needs at least 2 diagrams");
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < diagrams_.size(); ++i) labels_.push_back(std::to_string(i + 1));
  }
  if (labels_.size() != diagrams_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "label count differs from diagram count");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw Error(ErrorCode::DuplicateId, "diagram labels must be unique");
  }
  const double scale = d_.base().norm();
  for (std::size_t i = 0; i < diagrams_.size(); ++i) {
    const Matrix& di = diagrams_[i].d().base();
    if (di.rows() != d_.dim() || (di - d_.base()).norm() > tol::shared_metric * scale) {
      throw Error(ErrorCode::DimensionMismatch,
                  "diagram '" + labels_[i] + "' does not share the collection's row metric");
    }
  }
}

CoefficientMatrices coefficient_matrices(const DiagramCollection& coll) {
  const auto k = static_cast<Eigen::Index>(coll.size());
  const Matrix d_half = coll.d().power(0.5);
  std::vector<Matrix> sym;
  sym.reserve(coll.size());
  for (std::size_t i = 0; i < coll.size(); ++i) {
    sym.push_back(symmetrized(gram_w(coll.diagrams()[i]), d_half));
    check_rv_operand(sym.back(), "diagram '" + coll.labels()[i] + "'");
  }
  CoefficientMatrices out{Matrix(k, k), Matrix(k, k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const double c = frobenius(sym[i], sym[j]);
      const double r = i == j ? 1.0 : rv_from(sym[i], sym[j]);
      out.covv(i, j) = out.covv(j, i) = c;
      out.rv(i, j) = out.rv(j, i) = r;
    }
  }
  return out;
}

StatisResult statis(const DiagramCollection& coll, StatisBasis basis) {
  StatisResult out;
  {
    CoefficientMatrices cm = coefficient_matrices(coll);
    out.covv_matrix = std::move(cm.covv);
    out.rv_matrix = std::move(cm.rv);
  }
  const Matrix& chosen = basis == StatisBasis::rv ? out.rv_matrix : out.covv_matrix;
  const SymEigen e = sym_eigen(chosen);
  out.basis_eigenvalues = e.values;
  const double lead = e.values(0);
  if (!(lead - e.values(1) >= tol::perron_gap * std::abs(lead)) || !(lead > 0.0)) {
    throw Error(ErrorCode::PerronAmbiguity,
                "leading eigenvalue of the " +
                    std::string(basis == StatisBasis::rv ? "RV" : "COVV") +
                    " matrix is not simple; compromise weights are not unique");
  }
  Vector u = e.vectors.col(0);
  if (u.sum() < 0.0) u = -u;
  u = u.cwiseMax(0.0);
  out.weights = u / u.sum();

  const SymEigen rv_eig = basis == StatisBasis::rv ? e : sym_eigen(out.rv_matrix);
  const Eigen::Index axes = std::min<Eigen::Index>(2, rv_eig.values.size());
  out.interstructure = rv_eig.vectors.leftCols(axes) *
                       rv_eig.values.head(axes).cwiseMax(0.0).cwiseSqrt().asDiagonal();

  const Eigen::Index n = coll.d().dim();
  std::vector<Matrix> grams;
  grams.reserve(coll.size());
  out.compromise_w = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < coll.size(); ++i) {
    grams.push_back(gram_w(coll.diagrams()[i]));
    out.compromise_w += out.weights(static_cast<Eigen::Index>(i)) * grams.back();
  }
  out.compromise_eigen = operator_eigen(out.compromise_w, coll.d());

  const Matrix d_half = coll.d().power(0.5);
  const Matrix comp_sym = symmetrized(out.compromise_w, d_half);
  out.distances_to_compromise.resize(static_cast<Eigen::Index>(coll.size()));
  for (std::size_t i = 0; i < coll.size(); ++i) {
    out.distances_to_compromise(static_cast<Eigen::Index>(i)) =
        rv_from(symmetrized(grams[i], d_half), comp_sym);
  }
  return out;
}

}  // namespace ddiag
