#include "doctest.h"

#include <cmath>
#include <numeric>

#include "ddiag/triplet.hpp"
#include "test_support.hpp"
#include "unit_helpers.hpp"

using namespace ddiag;
using namespace ddiag::testing;

namespace {

Triplet random_triplet(Rng& rng, Eigen::Index n, Eigen::Index p) {
  return Triplet(random_matrix(rng, n, p), SpdMatrix(random_spd(rng, p)),
                 SpdMatrix(random_spd(rng, n)));
}

}  // namespace

TEST_CASE("make_triplet validates dimensions") {
  const Matrix x = Matrix::Ones(3, 2);
  CHECK_NOTHROW(make_triplet(x, SpdMatrix::identity(2), SpdMatrix::identity(3)));
  CHECK(code_of([&] { make_triplet(x, SpdMatrix::identity(3), SpdMatrix::identity(3)); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { make_triplet(x, SpdMatrix::identity(2), SpdMatrix::identity(2)); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("crossprod_v and gram_w") {
  const Triplet zero(Matrix::Zero(3, 2), SpdMatrix::identity(2), SpdMatrix::identity(3));
  CHECK(crossprod_v(zero).norm() == 0.0);
  CHECK(gram_w(zero).norm() == 0.0);

  const Triplet id(Matrix::Identity(2, 2), SpdMatrix::identity(2), SpdMatrix::identity(2));
  CHECK((crossprod_v(id) - Matrix::Identity(2, 2)).norm() == 0.0);

  Rng rng(21);
  const Matrix x = random_matrix(rng, 5, 3);
  const Triplet moments(x, SpdMatrix::identity(3),
                        SpdMatrix(Matrix::Identity(5, 5) / 5.0));
  CHECK((crossprod_v(moments) - x.transpose() * x / 5.0).norm() < 1e-14);

  const Matrix x2 = random_matrix(rng, 4, 6);
  const Triplet plain(x2, SpdMatrix::identity(6), SpdMatrix::identity(4));
  CHECK((gram_w(plain) - x2 * x2.transpose()).norm() < 1e-13);

  const SpdMatrix q(random_spd(rng, 6));
  const Triplet metric(x2, q, SpdMatrix::identity(4));
  const Matrix xl = x2 * spd_factor(q);
  CHECK((gram_w(metric) - xl * xl.transpose()).norm() <= 1e-10 * gram_w(metric).norm());
}

TEST_CASE("diagram_eigen of the zero matrix") {
  const Triplet zero(Matrix::Zero(4, 3), SpdMatrix::identity(3), SpdMatrix::identity(4));
  const DiagramEigen e = diagram_eigen(zero);
  CHECK(e.rank == 0);
  CHECK(e.values.size() == 3);
  CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK((e.row_vectors.transpose() * e.row_vectors - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK(code_of([&] { transfer_row_vectors(zero, e); }) == ErrorCode::RankMismatch);
}

TEST_CASE("diagram_eigen with identity metrics reproduces the SVD") {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = uniform_int(rng, 2, 12);
    const Eigen::Index p = uniform_int(rng, 2, 12);
    const Matrix x = random_matrix(rng, n, p);
    const DiagramEigen e =
        diagram_eigen(Triplet(x, SpdMatrix::identity(p), SpdMatrix::identity(n)));
    const SvdOracle svd = svd_oracle(x);
    const Eigen::Index r = std::min(n, p);
    REQUIRE(e.values.size() == r);
    for (Eigen::Index k = 0; k < r; ++k) {
      CHECK(std::abs(e.values(k) - svd.singular(k) * svd.singular(k)) <=
            1e-9 * e.values(0));
    }
    // Singular vectors agree up to sign for a generic spectrum.
    for (Eigen::Index k = 0; k < e.rank; ++k) {
      const double s = e.col_vectors.col(k).dot(svd.v.col(k)) > 0 ? 1.0 : -1.0;
      CHECK((e.col_vectors.col(k) - s * svd.v.col(k)).norm() < 1e-7);
      CHECK((e.row_vectors.col(k) - s * svd.u.col(k)).norm() < 1e-7);
    }
  }
}

TEST_CASE("diagram_eigen matches the explicit nonsymmetric operator") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const Triplet t = random_triplet(rng, 8, 5);
    const DiagramEigen e = diagram_eigen(t);
    const Matrix vq = crossprod_v(t) * t.q().base();
    const Vector oracle = general_eigenvalues(vq);
    for (Eigen::Index k = 0; k < 5; ++k) {
      CHECK(std::abs(e.values(k) - oracle(k)) <= 1e-8 * std::max(1.0, oracle(0)));
    }
  }
}

TEST_CASE("metric orthonormality and transfer hold on both decomposition sides") {
  Rng rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = uniform_int(rng, 2, 15);
    const Eigen::Index p = uniform_int(rng, 2, 15);
    const Triplet t = random_triplet(rng, n, p);
    const DiagramEigen e = diagram_eigen(t);
    const Eigen::Index r = std::min(n, p);
    const Matrix& v = e.col_vectors;
    const Matrix& w = e.row_vectors;
    CHECK((v.transpose() * t.q().base() * v - Matrix::Identity(r, r)).norm() <= 1e-9);
    CHECK((w.transpose() * t.d().base() * w - Matrix::Identity(r, r)).norm() <= 1e-9);

    const Matrix wd = gram_w(t) * t.d().base();
    const Matrix vq = crossprod_v(t) * t.q().base();
    const Matrix xq = t.x() * t.q().base();
    for (Eigen::Index k = 0; k < e.rank; ++k) {
      const double lam = e.values(k);
      CHECK((wd * w.col(k) - lam * w.col(k)).norm() <= 1e-9 * e.values(0));
      CHECK((vq * v.col(k) - lam * v.col(k)).norm() <= 1e-9 * e.values(0) * v.col(k).norm());
      CHECK((xq * v.col(k) - std::sqrt(lam) * w.col(k)).norm() <= 1e-9 * std::sqrt(e.values(0)));
    }
    // Null columns are annihilated by the operators.
    for (Eigen::Index k = e.rank; k < r; ++k) {
      CHECK((wd * w.col(k)).norm() <= 1e-8 * e.values(0));
      CHECK((vq * v.col(k)).norm() <= 1e-8 * e.values(0) * v.col(k).norm());
    }
  }
}

TEST_CASE("transfer_row_vectors") {
  SUBCASE("rank-one geometry") {
    Vector u(4), v(3);
    u << 1, -2, 0.5, 3;
    v << 2, 1, -1;
    const Triplet t(u * v.transpose(), SpdMatrix::identity(3), SpdMatrix::identity(4));
    const DiagramEigen e = diagram_eigen(t);
    CHECK(e.rank == 1);
    const Matrix w = transfer_row_vectors(t, e);
    REQUIRE(w.cols() == 1);
    CHECK(std::abs(std::abs(w.col(0).dot(u.normalized())) - 1.0) < 1e-12);
  }
  SUBCASE("residual and orthogonality on random triplets") {
    Rng rng(25);
    for (int trial = 0; trial < 20; ++trial) {
      const Triplet t = random_triplet(rng, uniform_int(rng, 3, 10), uniform_int(rng, 2, 10));
      const DiagramEigen e = diagram_eigen(t);
      const Matrix w = transfer_row_vectors(t, e);
      CHECK((w - e.row_vectors.leftCols(e.rank)).norm() <= 1e-9);
      const Matrix wd = gram_w(t) * t.d().base();
      for (Eigen::Index k = 0; k < e.rank; ++k) {
        CHECK((wd * w.col(k) - e.values(k) * w.col(k)).norm() <= 1e-9 * e.values(0));
      }
      // <XQv1, XQv2>_D = lambda <v1, v2>_Q = 0
      if (e.rank >= 2) {
        const Matrix xq = t.x() * t.q().base();
        const double ip = (xq * e.col_vectors.col(0)).dot(t.d().base() * xq * e.col_vectors.col(1));
        CHECK(std::abs(ip) <= 1e-10 * e.values(0));
      }
    }
  }
}

TEST_CASE("total_inertia") {
  const Triplet zero(Matrix::Zero(3, 2), SpdMatrix::identity(2), SpdMatrix::identity(3));
  CHECK(total_inertia(zero) == 0.0);

  Vector x(5);
  x << 1.5, -0.5, 2.0, -1.0, -2.0;
  x.array() -= x.mean();
  const double biased_var = x.squaredNorm() / 5.0;
  const Triplet single(x, SpdMatrix::identity(1), SpdMatrix(Matrix::Identity(5, 5) / 5.0));
  CHECK(std::abs(total_inertia(single) - biased_var) < 1e-14);

  Rng rng(26);
  for (int trial = 0; trial < 30; ++trial) {
    const Triplet t = random_triplet(rng, uniform_int(rng, 2, 12), uniform_int(rng, 2, 12));
    const double tr_vq = (crossprod_v(t) * t.q().base()).trace();
    const double tr_wd = (gram_w(t) * t.d().base()).trace();
    CHECK(rel_err(tr_vq, tr_wd) <= 1e-10);
    CHECK(rel_err(total_inertia(t), tr_vq) <= 1e-10);
    CHECK(rel_err(total_inertia(t), diagram_eigen(t).values.sum()) <= 1e-10);
  }
}

TEST_CASE("operator_eigen decomposes W D") {
  Rng rng(27);
  const Matrix z = random_matrix(rng, 6, 3);
  const Matrix w = z * z.transpose();
  const SpdMatrix d(random_spd(rng, 6));
  const OperatorEigen e = operator_eigen(w, d);
  CHECK(e.rank == 3);
  const Vector oracle = general_eigenvalues(w * d.base());
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(std::abs(e.values(k) - oracle(k)) < 1e-9 * oracle(0));
  CHECK((e.vectors.transpose() * d.base() * e.vectors - Matrix::Identity(6, 6)).norm() < 1e-9);
}

TEST_CASE("center_columns") {
  SUBCASE("uniform weights") {
    Matrix x(3, 1);
    x << 1, 2, 3;
    const Matrix c = center_columns(x, SpdMatrix(Matrix::Identity(3, 3) / 3.0));
    CHECK(std::abs(c(0, 0) + 1.0) < 1e-15);
    CHECK(std::abs(c(1, 0)) < 1e-15);
    CHECK(std::abs(c(2, 0) - 1.0) < 1e-15);
  }
  SUBCASE("weighted mean") {
    Matrix x(3, 1);
    x << 0, 1, 3;
    Vector w(3);
    w << 0.5, 0.25, 0.25;
    const Matrix c = center_columns(x, SpdMatrix::diagonal(w));
    CHECK(c(0, 0) == -1.0);
    CHECK(c(1, 0) == 0.0);
    CHECK(c(2, 0) == 2.0);
  }
  SUBCASE("weighted zero mean, idempotence and column permutation") {
    Rng rng(28);
    const Matrix x = random_matrix(rng, 7, 4);
    const SpdMatrix d(random_spd(rng, 7));
    const Matrix c = center_columns(x, d);
    CHECK((Vector::Ones(7).transpose() * d.base() * c).norm() <= 1e-10);
    CHECK((center_columns(c, d) - c).norm() <= 1e-12);
    const Eigen::PermutationMatrix<Eigen::Dynamic> perm(Eigen::Vector4i(2, 0, 3, 1));
    CHECK((center_columns(x * perm, d) - c * perm).norm() <= 1e-14);
    const Matrix u = center_columns(x);
    CHECK(u.colwise().sum().norm() < 1e-12);
  }
}
