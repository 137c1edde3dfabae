#pragma once

#include "nlpdhg/engine.hpp"

namespace nlpdhg {

// min_x lambda ||x||_1 + (1/(2m)) ||A x - b||^2 as the saddle problem
// lambda ||x||_1 + <y, A x - b> - (m/2) ||y||^2.
class LassoProblem : public SaddleProblem {
 public:
  enum class NormChoice { MaxRow, MaxColumn };

  // The default operator norm is the largest row l2 norm, the norm induced by
  // l2 on x and l_inf on A x.
  LassoProblem(Matrix A, Vector b, double lambda, NormChoice norm = NormChoice::MaxRow);

  // shrink1(x_bar - tau A^T y_tilde, lambda tau)
  Point primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const override;
  // (y_bar + sigma (A x_tilde - b)/m) / (1 + sigma)
  Point dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const override;

  const LinearOperator& op() const override { return op_; }
  double op_norm() const override { return norm_; }
  double gamma_h_star() const override { return 1.0; }
  const BregmanGeometry& geom_x() const override { return geom_x_; }
  const BregmanGeometry& geom_y() const override { return geom_y_; }
  std::string id() const override { return "lasso"; }
  double lagrangian(const Vector& x, const Vector& y) const override;
  // x_0 = 0, y_0 = b.
  IterateState initial_state() const override;

  // AccDual with tau_0 = 1/(2||A||^2), hence sigma_0 = 2.
  StepSchedule default_schedule(double theta0 = 0.0) const;

  const Matrix& A() const { return op_.base(); }
  const Vector& b() const { return b_; }
  double lambda() const { return lambda_; }
  Eigen::Index m() const { return op_.rows(); }

 private:
  LinearOperator op_;
  Vector b_;
  double lambda_;
  double norm_;
  BregmanGeometry geom_x_;
  BregmanGeometry geom_y_;
};

// Componentwise soft threshold; exact zeros where |x_j| <= beta.
Vector shrink1(const Vector& x, double beta);

double lasso_objective(const LassoProblem& p, const Vector& x);

// ||m y - (A x - b)||_2 plus the largest violation of -A^T y in lambda d||x||_1.
double lasso_optimality_residual(const LassoProblem& p, const Vector& x, const Vector& y);

// Smallest lambda for which x = 0 is optimal: ||A^T b||_inf / m.
double lasso_lambda_max(const Matrix& A, const Vector& b);

IterateState lasso_step(const LassoProblem& p, const IterateState& s, StepSchedule& sched);

}  // namespace nlpdhg
