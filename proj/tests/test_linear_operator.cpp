#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "nlpdhg/linear_operator.hpp"
#include "test_util.hpp"

using namespace nlpdhg;

namespace {

double svd_max(const Matrix& a) { return Eigen::JacobiSVD<Matrix>(a).singularValues()[0]; }

}  // namespace

TEST_CASE("apply and adjoint on small fixed inputs") {
  auto id = LinearOperator::dense(Matrix::Identity(3, 3));
  Vector x(3);
  x << 1, 2, 3;
  CHECK(id.apply(x) == x);

  auto sc = LinearOperator::scaled_concat(Matrix::Identity(2, 2), 2.0);
  Vector e1 = Vector::Zero(4);
  e1[0] = 1.0;
  Vector want(2);
  want << 2, 0;
  CHECK(sc.apply(e1) == want);

  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  Vector y = Vector::Ones(2);
  Vector got = LinearOperator::dense(a).adjoint_apply(y);
  CHECK(got[0] == 4.0);
  CHECK(got[1] == 6.0);
}

TEST_CASE("adjoint identity on random probes") {
  auto r = testutil::rng(1);
  for (int t = 0; t < 30; ++t) {
    Matrix b = testutil::gaussian(r, 7, 5);
    for (const auto& op : {LinearOperator::dense(b), LinearOperator::scaled_concat(b, 1.3)}) {
      Vector x = testutil::gaussian(r, op.cols()), y = testutil::gaussian(r, op.rows());
      const double lhs = y.dot(op.apply(x)), rhs = op.adjoint_apply(y).dot(x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("scaled concatenation matches the materialized matrix") {
  auto r = testutil::rng(2);
  Matrix b = testutil::gaussian(r, 4, 3);
  auto op = LinearOperator::scaled_concat(b, 0.7);
  Matrix full(4, 6);
  full << 0.7 * b, -0.7 * b;
  CHECK((op.materialize() - full).norm() == 0.0);
  for (int t = 0; t < 10; ++t) {
    Vector x = testutil::gaussian(r, 6), y = testutil::gaussian(r, 4);
    CHECK((op.apply(x) - full * x).norm() < 1e-13);
    CHECK((op.adjoint_apply(y) - full.transpose() * y).norm() < 1e-13);
  }
}

TEST_CASE("column, entry and row norms") {
  Matrix a(2, 2);
  a << 3, 0, 4, 0;
  CHECK(norm_1_2(LinearOperator::dense(a)) == 5.0);
  CHECK(norm_1_2(LinearOperator::dense(Matrix::Identity(6, 6))) == 1.0);
  Matrix b = Matrix::Ones(2, 1);
  CHECK(norm_1_2(LinearOperator::scaled_concat(b, 3.0)) == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-15));

  Matrix c(2, 2);
  c << -1, 2, 3, -4;
  CHECK(norm_1_inf(LinearOperator::dense(c)) == 4.0);
  CHECK(norm_1_inf(LinearOperator::dense(Matrix::Zero(3, 3))) == 0.0);

  auto r = testutil::rng(3);
  Matrix s(9, 7);
  for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = r.uniform() < 0.5 ? -1.0 : 1.0;
  double scan = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cols(); ++j) scan = std::max(scan, std::abs(s(i, j)));
  CHECK(norm_1_inf(LinearOperator::dense(s)) == scan);

  Matrix g = testutil::gaussian(r, 5, 8);
  double row = 0.0;
  for (Eigen::Index i = 0; i < 5; ++i) row = std::max(row, g.row(i).norm());
  CHECK(norm_2_inf(LinearOperator::dense(g)) == doctest::Approx(row).epsilon(1e-15));
  CHECK(norm_2_inf(LinearOperator::scaled_concat(g, 2.0)) ==
        doctest::Approx(norm_2_inf(LinearOperator::dense(LinearOperator::scaled_concat(g, 2.0).materialize())))
            .epsilon(1e-14));
}

TEST_CASE("power iteration against the SVD") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  CHECK(norm_2_2(LinearOperator::dense(d)).value == doctest::Approx(3.0).epsilon(1e-9));
  Matrix shift = Matrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  CHECK(norm_2_2(LinearOperator::dense(shift)).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(norm_2_2(LinearOperator::dense(Matrix::Identity(4, 4))).value == doctest::Approx(1.0).epsilon(1e-12));

  auto r = testutil::rng(4);
  for (int t = 0; t < 10; ++t) {
    Matrix a = testutil::gaussian(r, 12, 9);
    CHECK(norm_2_2(LinearOperator::dense(a), 1e-12).value == doctest::Approx(svd_max(a)).epsilon(1e-5));
    auto sc = LinearOperator::scaled_concat(a, 0.5);
    CHECK(norm_2_2(sc, 1e-12).value == doctest::Approx(svd_max(sc.materialize())).epsilon(1e-5));
  }
}

TEST_CASE("power iteration reports its last estimate when it gives up") {
  auto r = testutil::rng(5);
  Matrix a = testutil::gaussian(r, 40, 40);
  try {
    norm_2_2(LinearOperator::dense(a), 1e-15, 2);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_estimate > 0.0);
    CHECK(e.last_estimate <= svd_max(a) * (1 + 1e-12));
  }
}

TEST_CASE("norm ordering and the Cauchy-Schwarz probe") {
  auto r = testutil::rng(6);
  for (int t = 0; t < 20; ++t) {
    Matrix a = testutil::gaussian(r, 6, 10);
    auto op = LinearOperator::dense(a);
    const double n1inf = norm_1_inf(op), n12 = norm_1_2(op), n22 = svd_max(a);
    CHECK(n1inf <= n12);
    CHECK(n12 <= n22 * (1 + 1e-12));
    CHECK(norm_2_inf(op) <= n22 * (1 + 1e-12));
    for (int p = 0; p < 20; ++p) {
      Vector x = testutil::gaussian(r, 10);
      Vector ax = a * x;
      CHECK(ax.norm() <= n12 * x.lpNorm<1>() * (1 + 1e-12));
      CHECK(ax.lpNorm<Eigen::Infinity>() <= n1inf * x.lpNorm<1>() * (1 + 1e-12));
      CHECK(ax.lpNorm<Eigen::Infinity>() <= norm_2_inf(op) * x.norm() * (1 + 1e-12));
    }
  }
}

TEST_CASE("norm equivalence and the bilinear probe with weights") {
  auto r = testutil::rng(8);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index n = 4 + t % 5;
    Matrix a = testutil::gaussian(r, 5, n);
    auto op = LinearOperator::dense(a);
    const double n12 = norm_1_2(op), n22 = norm_2_2(op, 1e-12).value;
    CHECK(n12 <= n22 * (1 + 1e-9));
    CHECK(n22 <= std::sqrt(static_cast<double>(n)) * n12 * (1 + 1e-12));
    for (double alpha : {0.1, 1.0, 10.0}) {
      for (int p = 0; p < 10; ++p) {
        Vector dx = testutil::gaussian(r, n), dy = testutil::gaussian(r, 5);
        // l2 pairing with ||.||_{2,2}; l1 / l2 pairing with ||.||_{1,2}
        CHECK(std::abs(dy.dot(a * dx)) <= n22 * (alpha / 2 * dx.squaredNorm() + dy.squaredNorm() / (2 * alpha)) * (1 + 1e-9));
        const double l1 = dx.lpNorm<1>();
        CHECK(std::abs(dy.dot(a * dx)) <= n12 * (alpha / 2 * l1 * l1 + dy.squaredNorm() / (2 * alpha)) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("CSV round trip is exact") {
  auto r = testutil::rng(7);
  Matrix a = testutil::gaussian(r, 5, 3);
  a(0, 0) = 1e-300;
  a(1, 1) = -123456789.123456789;
  Vector v = testutil::gaussian(r, 4);
  auto dir = std::filesystem::temp_directory_path() / "nlpdhg_csv_test";
  std::filesystem::create_directories(dir);
  store_matrix_csv((dir / "a.csv").string(), a);
  store_vector_csv((dir / "v.csv").string(), v);
  CHECK(load_matrix_csv((dir / "a.csv").string()) == a);
  CHECK(load_vector_csv((dir / "v.csv").string()) == v);
  std::filesystem::remove_all(dir);
}
