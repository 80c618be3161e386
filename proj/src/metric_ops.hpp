#pragma once

// Internal helpers shared by the library sources.

#include "ddiag/linalg.hpp"

namespace ddiag::detail {

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// metric * a, skipping the dense product for diagonal metrics.
inline Matrix apply(const SpdMatrix& metric, const Matrix& a) {
  if (metric.is_diagonal()) return metric.base().diagonal().asDiagonal() * a;
  return metric.base() * a;
}

// Clamps eigenvalues in [-tol::eig * scale, 0) to zero; more negative values
// throw ConvergenceFailure.
Vector clamp_spectrum(const Vector& values);

// Extends `retained` (metric-orthonormal columns) to `total` metric-orthonormal
// columns, the new ones metric-orthogonal to the retained span.
Matrix complete_basis(const Matrix& retained, const SpdMatrix& metric, Eigen::Index total);

}  // namespace ddiag::detail
