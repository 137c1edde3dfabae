#pragma once

#include <utility>

#include "nlpdhg/saddle_problem.hpp"

namespace nlpdhg {

// g(x) = (a/2)||x||^2 + <c, x>, h*(y) = (b/2)||y||^2 + <d, y>, Euclidean
// geometries. Small strongly convex test problem with an exactly computable
// saddle point.
class QuadraticSaddleProblem : public SaddleProblem {
 public:
  QuadraticSaddleProblem(Matrix A, double a, double b, Vector c, Vector d);
  QuadraticSaddleProblem(Matrix A, double a, double b)
      : QuadraticSaddleProblem(A, a, b, Vector::Zero(A.cols()), Vector::Zero(A.rows())) {}

  Point primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const override;
  Point dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const override;
  const LinearOperator& op() const override { return op_; }
  double op_norm() const override { return norm_; }
  double gamma_g() const override { return a_; }
  double gamma_h_star() const override { return b_; }
  const BregmanGeometry& geom_x() const override { return geom_; }
  const BregmanGeometry& geom_y() const override { return geom_; }
  std::string id() const override { return "quadratic"; }
  double lagrangian(const Vector& x, const Vector& y) const override;
  IterateState initial_state() const override;

  // Solves the optimality system  a x + c + A^T y = 0,  A x - b y - d = 0.
  std::pair<Vector, Vector> saddle_point() const;

 private:
  LinearOperator op_;
  double a_, b_;
  Vector c_, d_;
  double norm_;
  BregmanGeometry geom_ = BregmanGeometry::quadratic(1.0);
};

}  // namespace nlpdhg
