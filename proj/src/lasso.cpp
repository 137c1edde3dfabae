#include "nlpdhg/lasso.hpp"

#include <cmath>

namespace nlpdhg {

LassoProblem::LassoProblem(Matrix A, Vector b, double lambda, NormChoice norm)
    : op_(LinearOperator::dense(std::move(A))),
      b_(std::move(b)),
      lambda_(lambda),
      norm_(0.0),
      geom_x_(BregmanGeometry::quadratic(1.0)),
      geom_y_(BregmanGeometry::quadratic(static_cast<double>(op_.rows()))) {
  require_same_size(b_.size(), op_.rows(), "lasso b");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lasso: lambda must be positive");
  norm_ = norm == NormChoice::MaxRow ? norm_2_inf(op_) : norm_1_2(op_);
  if (!(norm_ > 0.0)) throw ConfigError("lasso: A must be nonzero");
}

Vector shrink1(const Vector& x, double beta) {
  if (!(beta > 0.0)) throw ConfigError("shrink1: beta must be positive");
  Vector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double v = x[j];
    out[j] = v > beta ? v - beta : (v < -beta ? v + beta : 0.0);
  }
  return out;
}

Point LassoProblem::primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const {
  return Point{shrink1(x_bar.value - tau * op_.adjoint_apply(y_tilde), lambda_ * tau), Vector()};
}

Point LassoProblem::dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const {
  const double md = static_cast<double>(m());
  return Point{(y_bar.value + sigma * (op_.apply(x_tilde) - b_) / md) / (1.0 + sigma), Vector()};
}

double LassoProblem::lagrangian(const Vector& x, const Vector& y) const {
  return lambda_ * x.lpNorm<1>() + y.dot(op_.apply(x) - b_) - 0.5 * static_cast<double>(m()) * y.squaredNorm();
}

IterateState LassoProblem::initial_state() const {
  return IterateState::start(Point{Vector::Zero(op_.cols()), Vector()}, Point{b_, Vector()});
}

StepSchedule LassoProblem::default_schedule(double theta0) const {
  return StepSchedule::acc_dual(1.0, norm_, 1.0 / (2.0 * norm_ * norm_), theta0);
}

double lasso_objective(const LassoProblem& p, const Vector& x) {
  return p.lambda() * x.lpNorm<1>() + (p.op().apply(x) - p.b()).squaredNorm() / (2.0 * static_cast<double>(p.m()));
}

double lasso_optimality_residual(const LassoProblem& p, const Vector& x, const Vector& y) {
  const double md = static_cast<double>(p.m());
  const double r1 = (md * y - (p.op().apply(x) - p.b())).norm();
  Vector g = p.op().adjoint_apply(y);
  double viol = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0)
      viol = std::max(viol, std::abs(g[j] + p.lambda() * (x[j] > 0.0 ? 1.0 : -1.0)));
    else
      viol = std::max(viol, std::abs(g[j]) - p.lambda());
  }
  return r1 + viol;
}

double lasso_lambda_max(const Matrix& A, const Vector& b) {
  return (A.transpose() * b).lpNorm<Eigen::Infinity>() / static_cast<double>(A.rows());
}

IterateState lasso_step(const LassoProblem& p, const IterateState& s, StepSchedule& sched) {
  if (sched.regime() != Regime::AccDual) throw ConfigError("lasso_step requires the acc-dual regime");
  const double md = static_cast<double>(p.m());
  const double theta = sched.extrapolation_sign() * sched.theta();
  const double tau = sched.tau(), sigma = sched.sigma();
  const LinearOperator& A = p.op();
  Vector x_ext = s.x.value + theta * (s.x.value - s.x_prev.value);
  Vector y = (s.y.value + sigma * (A.apply(x_ext) - p.b()) / md) / (1.0 + sigma);
  Vector x = shrink1(s.x.value - tau * A.adjoint_apply(y), p.lambda() * tau);
  IterateState n;
  n.x_prev = s.x;
  n.y_prev = s.y;
  n.x = Point{std::move(x), Vector()};
  n.y = Point{std::move(y), Vector()};
  n.k = s.k + 1;
  sched.advance();
  return n;
}

}  // namespace nlpdhg
