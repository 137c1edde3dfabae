#pragma once

#include <vector>

#include "nlpdhg/engine.hpp"

namespace nlpdhg {

// min_{||v||_1 <= lambda} (1/m) sum_i log(1 + exp((B v)_i)), lifted to the
// simplex of dimension 2d through v = lambda (I | -I) x.
class L1LogRegProblem : public SaddleProblem {
 public:
  // B has rows -b_i u_i.
  L1LogRegProblem(Matrix B, double lambda);

  // x ∝ x_bar exp(-tau A^T y_tilde)
  Point primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const override;
  // w = (4 m sigma A x_tilde + w_bar) / (1 + 4 m sigma), y = 1/(m + m exp(-w))
  Point dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const override;

  const LinearOperator& op() const override { return op_; }
  double op_norm() const override { return norm_; }
  double gamma_h_star() const override { return 4.0 * static_cast<double>(m()); }
  const BregmanGeometry& geom_x() const override { return geom_x_; }
  const BregmanGeometry& geom_y() const override { return geom_y_; }
  std::string id() const override { return "l1logreg"; }
  double lagrangian(const Vector& x, const Vector& y) const override;
  // x_0 uniform on the simplex, y_0 = 1/(2m).
  IterateState initial_state() const override;

  // AccDual with theta_0 = 0, tau_0 = 2m/||A||^2 (so sigma_0 = 1/(2m)).
  StepSchedule default_schedule() const;

  Eigen::Index m() const { return op_.rows(); }
  Eigen::Index d() const { return op_.base().cols(); }
  double lambda() const { return op_.scale(); }
  const Matrix& B() const { return op_.base(); }

  // 1/(m (1 + exp(-z))) componentwise.
  Vector dual_map(const Vector& z) const;

 private:
  LinearOperator op_;
  double norm_;
  BregmanGeometry geom_x_;
  BregmanGeometry geom_y_;
};

// v_j = lambda (x_j - x_{d+j}).
Vector recover_v(const Vector& x, double lambda);

// (1/m) sum_i log(1 + exp((B v)_i)).
double l1logreg_objective(const Matrix& B, const Vector& v);

// ||y - dual_map(A x)||_2.
double l1logreg_dual_residual(const L1LogRegProblem& p, const Vector& x, const Vector& y);

// Indices j with scores_j >= max(scores) - tol.
std::vector<Eigen::Index> support_from_scores(const Vector& scores, double tol);
// support_from_scores(-A^T y, tol).
std::vector<Eigen::Index> support_from_dual(const L1LogRegProblem& p, const Vector& y, double tol);

// One accelerated step written out explicitly for this problem; the schedule
// must be AccDual and advances.
IterateState l1logreg_step(const L1LogRegProblem& p, const IterateState& s, StepSchedule& sched);

}  // namespace nlpdhg
