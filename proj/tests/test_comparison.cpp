#include "doctest.h"

#include <cmath>

#include "ddiag/comparison.hpp"
#include "ddiag/methods.hpp"
#include "test_support.hpp"
#include "unit_helpers.hpp"

using namespace ddiag;
using namespace ddiag::testing;

namespace {

// tr(W1 D W2 D) evaluated directly.
double trace_oracle(const Matrix& w1, const Matrix& w2, const Matrix& d) {
  return (w1 * d * w2 * d).trace();
}

Matrix random_gram(Rng& rng, Eigen::Index n, Eigen::Index p) {
  const Matrix x = random_matrix(rng, n, p);
  return x * random_spd(rng, p) * x.transpose();
}

// n x total matrix whose columns are D-orthonormal.
Matrix d_orthonormal_columns(Rng& rng, const SpdMatrix& d, Eigen::Index total) {
  const Eigen::Index n = d.dim();
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n, total));
  const Matrix basis = qr.householderQ() * Matrix::Identity(n, total);
  return spd_power(d, -0.5) * basis;
}

DiagramCollection collection_of(const std::vector<Matrix>& xs, const SpdMatrix& d) {
  std::vector<Triplet> ts;
  for (const auto& x : xs) ts.emplace_back(x, SpdMatrix::identity(x.cols()), d);
  return DiagramCollection(d, std::move(ts), {});
}

}  // namespace

TEST_CASE("covv examples") {
  Rng rng(51);
  const SpdMatrix d(random_spd(rng, 5));
  const Matrix w = random_gram(rng, 5, 3);
  CHECK(covv(w, Matrix::Zero(5, 5), d) == 0.0);
  CHECK(covv(Matrix::Identity(4, 4), Matrix::Identity(4, 4), SpdMatrix::identity(4)) == 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix w1 = random_gram(rng, 5, 2);
    const Matrix w2 = random_gram(rng, 5, 4);
    const double expect = trace_oracle(w1, w2, d.base());
    CHECK(rel_err(covv(w1, w2, d), expect) <= 1e-10);
  }
}

TEST_CASE("covv inner product axioms") {
  Rng rng(52);
  const SpdMatrix d = SpdMatrix::diagonal(random_weights(rng, 6));
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_gram(rng, 6, 2);
    const Matrix b = random_gram(rng, 6, 3);
    const Matrix c = random_gram(rng, 6, 1);
    CHECK(covv(a, b, d) == covv(b, a, d));
    const double lhs = covv(2.0 * a + 0.5 * c, b, d);
    const double rhs = 2.0 * covv(a, b, d) + 0.5 * covv(c, b, d);
    CHECK(rel_err(lhs, rhs) <= 1e-12);
    CHECK(covv(a, a, d) > 0.0);
    CHECK(covv(a, b, d) >= 0.0);
  }
}

TEST_CASE("covv and rv error paths") {
  const SpdMatrix d = SpdMatrix::identity(3);
  CHECK(code_of([&] { covv(Matrix::Identity(2, 2), Matrix::Identity(3, 3), d); }) ==
        ErrorCode::DimensionMismatch);
  Matrix asym = Matrix::Identity(3, 3);
  asym(0, 2) = 1.0;
  CHECK(code_of([&] { covv(asym, Matrix::Identity(3, 3), d); }) == ErrorCode::NotSymmetric);
  CHECK(code_of([&] { rv(Matrix::Zero(3, 3), Matrix::Identity(3, 3), d); }) ==
        ErrorCode::ZeroOperator);
  Matrix indefinite = Matrix::Identity(3, 3);
  indefinite(2, 2) = -1.0;
  CHECK(code_of([&] { rv(indefinite, Matrix::Identity(3, 3), d); }) ==
        ErrorCode::NotNonnegativeDefinite);
}

TEST_CASE("rv examples") {
  Rng rng(53);
  const SpdMatrix d(random_spd(rng, 6));
  const Matrix w = random_gram(rng, 6, 2);
  CHECK(std::abs(rv(w, w, d) - 1.0) <= 1e-12);
  CHECK(std::abs(rv(w, 3.0 * w, d) - 1.0) <= 1e-12);

  // X1^T D X2 = 0 by construction.
  const Matrix z = d_orthonormal_columns(rng, d, 4);
  const Matrix x1 = z.leftCols(2) * random_matrix(rng, 2, 2);
  const Matrix x2 = z.rightCols(2) * random_matrix(rng, 2, 3);
  CHECK((x1.transpose() * d.base() * x2).norm() < 1e-10);
  CHECK(rv(x1 * x1.transpose(), x2 * x2.transpose(), d) <= 1e-10);
}

TEST_CASE("rv properties on random pairs") {
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = uniform_int(rng, 2, 10);
    const SpdMatrix d(random_spd(rng, n));
    const Matrix a = random_gram(rng, n, uniform_int(rng, 1, 5));
    const Matrix b = random_gram(rng, n, uniform_int(rng, 1, 5));
    const double value = rv(a, b, d);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
    CHECK(value == rv(b, a, d));
    CHECK(std::abs(rv(7.5 * a, b, d) - value) <= 1e-12);
    const double oracle = trace_oracle(a, b, d.base()) /
                          std::sqrt(trace_oracle(a, a, d.base()) * trace_oracle(b, b, d.base()));
    CHECK(std::abs(value - oracle) <= 1e-10);
  }
}

TEST_CASE("DiagramCollection validation") {
  Rng rng(55);
  const SpdMatrix d = SpdMatrix::diagonal(uniform_weights(5));
  const Triplet a(random_matrix(rng, 5, 2), SpdMatrix::identity(2), d);
  CHECK(code_of([&] { DiagramCollection(d, {a}, {}); }) == ErrorCode::InvalidConfig);
  const Triplet other(random_matrix(rng, 5, 2), SpdMatrix::identity(2), SpdMatrix::identity(5));
  CHECK(code_of([&] { DiagramCollection(d, {a, other}, {}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { DiagramCollection(d, {a, a}, {"s", "s"}); }) == ErrorCode::DuplicateId);
  const DiagramCollection ok(d, {a, a}, {});
  CHECK(ok.labels() == std::vector<std::string>{"1", "2"});
}

TEST_CASE("coefficient_matrices") {
  Rng rng(56);
  const SpdMatrix d = SpdMatrix::diagonal(random_weights(rng, 7));
  SUBCASE("identical diagrams") {
    const Matrix x = random_matrix(rng, 7, 3);
    const CoefficientMatrices cm = coefficient_matrices(collection_of({x, x}, d));
    CHECK((cm.rv - Matrix::Ones(2, 2)).norm() <= 1e-12);
  }
  SUBCASE("pairwise D-orthogonal diagrams") {
    const Matrix z = d_orthonormal_columns(rng, d, 6);
    const CoefficientMatrices cm = coefficient_matrices(
        collection_of({z.leftCols(2), z.middleCols(2, 2), z.rightCols(2)}, d));
    CHECK((cm.rv - Matrix::Identity(3, 3)).norm() <= 1e-10);
  }
  SUBCASE("random collection: C is a Gram matrix") {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Matrix> xs;
      const auto k = uniform_int(rng, 2, 6);
      for (Eigen::Index i = 0; i < k; ++i) xs.push_back(random_matrix(rng, 7, uniform_int(rng, 1, 4)));
      const CoefficientMatrices cm = coefficient_matrices(collection_of(xs, d));
      const SymEigen e = sym_eigen(cm.covv);
      CHECK(e.values(e.values.size() - 1) >= -1e-10 * e.values(0));
      CHECK((cm.rv.diagonal() - Vector::Ones(k)).norm() == 0.0);
      CHECK(cm.rv.minCoeff() >= 0.0);
      CHECK(cm.rv.maxCoeff() <= 1.0);
    }
  }
  SUBCASE("zero diagram is reported by label") {
    const Triplet zero(Matrix::Zero(7, 2), SpdMatrix::identity(2), d);
    const Triplet fine(random_matrix(rng, 7, 2), SpdMatrix::identity(2), d);
    try {
      coefficient_matrices(DiagramCollection(d, {fine, zero}, {"good", "empty"}));
      FAIL("expected ZeroOperator");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroOperator);
      CHECK(std::string(e.what()).find("empty") != std::string::npos);
    }
  }
}

TEST_CASE("statis on identical diagrams") {
  Rng rng(57);
  const SpdMatrix d = SpdMatrix::diagonal(uniform_weights(6));
  const Matrix x = random_matrix(rng, 6, 3);
  for (Eigen::Index k = 2; k <= 5; ++k) {
    const std::vector<Matrix> xs(static_cast<std::size_t>(k), x);
    const StatisResult res = statis(collection_of(xs, d));
    CHECK((res.weights - Vector::Constant(k, 1.0 / static_cast<double>(k))).norm() <= 1e-10);
    const Matrix w1 = x * x.transpose();
    CHECK((res.compromise_w - w1).norm() <= 1e-10 * w1.norm());
    CHECK((res.distances_to_compromise - Vector::Ones(k)).norm() <= 1e-10);
  }
}

TEST_CASE("statis with two diagrams weights them equally under RV") {
  Rng rng(58);
  for (int trial = 0; trial < 10; ++trial) {
    const SpdMatrix d = SpdMatrix::diagonal(random_weights(rng, 8));
    const StatisResult res =
        statis(collection_of({random_matrix(rng, 8, 2), random_matrix(rng, 8, 4)}, d));
    CHECK(std::abs(res.weights(0) - 0.5) <= 1e-12);
    CHECK(std::abs(res.weights(1) - 0.5) <= 1e-12);
  }
}

TEST_CASE("statis compromise eigenvalues match the explicit operator") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const SpdMatrix d = SpdMatrix::diagonal(random_weights(rng, 7));
    const auto coll = collection_of(
        {random_matrix(rng, 7, 2), random_matrix(rng, 7, 3), random_matrix(rng, 7, 2)}, d);
    for (StatisBasis basis : {StatisBasis::rv, StatisBasis::covv}) {
      const StatisResult res = statis(coll, basis);
      Matrix w = Matrix::Zero(7, 7);
      for (std::size_t i = 0; i < 3; ++i) {
        w += res.weights(static_cast<Eigen::Index>(i)) * gram_w(coll.diagrams()[i]);
      }
      const Vector oracle = general_eigenvalues(w * d.base());
      CHECK((res.compromise_eigen.values - oracle).cwiseAbs().maxCoeff() <= 1e-9 * oracle(0));
      CHECK((res.weights.array() >= 0.0).all());
      CHECK(std::abs(res.weights.sum() - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("statis weights are permutation equivariant") {
  Rng rng(60);
  const SpdMatrix d = SpdMatrix::diagonal(uniform_weights(9));
  const std::vector<Matrix> xs = {random_matrix(rng, 9, 2), random_matrix(rng, 9, 3),
                                  random_matrix(rng, 9, 1), random_matrix(rng, 9, 4)};
  const StatisResult base = statis(collection_of(xs, d));
  const std::vector<std::size_t> perm = {2, 0, 3, 1};
  std::vector<Matrix> shuffled;
  for (auto i : perm) shuffled.push_back(xs[i]);
  const StatisResult moved = statis(collection_of(shuffled, d));
  for (std::size_t i = 0; i < perm.size(); ++i) {
    CHECK(std::abs(moved.weights(static_cast<Eigen::Index>(i)) -
                   base.weights(static_cast<Eigen::Index>(perm[i]))) <= 1e-12);
  }
}

TEST_CASE("statis compromise is closer than any other single member for near-identical studies") {
  Rng rng(61);
  const SpdMatrix d = SpdMatrix::diagonal(uniform_weights(10));
  const Matrix core = random_matrix(rng, 10, 3);
  std::vector<Matrix> xs;
  for (int i = 0; i < 4; ++i) xs.push_back(core + 0.05 * random_matrix(rng, 10, 3));
  const auto coll = collection_of(xs, d);
  const StatisResult res = statis(coll);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(res.distances_to_compromise(i) >= res.rv_matrix(i, j));
    }
  }
}

TEST_CASE("statis raises PerronAmbiguity when the leading eigenvalue is repeated") {
  Rng rng(62);
  const SpdMatrix d = SpdMatrix::diagonal(uniform_weights(6));
  const Matrix z = d_orthonormal_columns(rng, d, 4);
  const auto coll = collection_of({z.leftCols(2), z.rightCols(2)}, d);
  CHECK(code_of([&] { statis(coll); }) == ErrorCode::PerronAmbiguity);
  CHECK(code_of([&] { statis(coll, StatisBasis::covv); }) == ErrorCode::PerronAmbiguity);
}
