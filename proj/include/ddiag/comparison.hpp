#pragma once

#include <string>
#include <vector>

#include "ddiag/triplet.hpp"

namespace ddiag {

namespace tol {
// Member row metrics must match the shared one within this (relative).
inline constexpr double shared_metric = 1e-12;
// Relative gap between the two leading eigenvalues required for STATIS.
inline constexpr double perron_gap = 1e-9;
}  // namespace tol

// COVV(W1 D, W2 D) = tr(W1 D W2 D). Exactly symmetric in its arguments.
double covv(const Matrix& w1, const Matrix& w2, const SpdMatrix& d);

// RV(W1 D, W2 D) in [0, 1]. Both operators must be nonnegative definite and
// nonzero.
double rv(const Matrix& w1, const Matrix& w2, const SpdMatrix& d);

/// k >= 2 diagrams on the same individuals, sharing one row metric.
class DiagramCollection {
 public:
  DiagramCollection(SpdMatrix d, std::vector<Triplet> diagrams, std::vector<std::string> labels);

  const SpdMatrix& d() const { return d_; }
  const std::vector<Triplet>& diagrams() const { return diagrams_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return diagrams_.size(); }

 private:
  SpdMatrix d_;
  std::vector<Triplet> diagrams_;
  std::vector<std::string> labels_;
};

struct CoefficientMatrices {
  Matrix covv;
  Matrix rv;
};

// Pairwise COVV and RV matrices. Entries are computed independently and may
// be evaluated in parallel; assembly order is fixed.
CoefficientMatrices coefficient_matrices(const DiagramCollection& coll);

enum class StatisBasis { covv, rv };

struct StatisResult {
  Matrix covv_matrix;
  Matrix rv_matrix;
  // Leading eigenvector of the chosen basis matrix, nonnegative, summing to 1.
  Vector weights;
  // Eigenvalues of the chosen basis matrix, non-increasing.
  Vector basis_eigenvalues;
  // Study coordinates on the two leading eigenvectors of the RV matrix,
  // scaled by sqrt(eigenvalue) (k x min(k, 2)).
  Matrix interstructure;
  Matrix compromise_w;
  OperatorEigen compromise_eigen;
  // RV of each study's W_i D against the compromise W D.
  Vector distances_to_compromise;
};

StatisResult statis(const DiagramCollection& coll, StatisBasis basis = StatisBasis::rv);

}  // namespace ddiag
