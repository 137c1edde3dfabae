#include "nlpdhg/quadratic_problem.hpp"

namespace nlpdhg {

QuadraticSaddleProblem::QuadraticSaddleProblem(Matrix A, double a, double b, Vector c, Vector d)
    : op_(LinearOperator::dense(A)), a_(a), b_(b), c_(std::move(c)), d_(std::move(d)) {
  if (a < 0.0 || b < 0.0) throw ConfigError("quadratic problem: curvatures must be nonnegative");
  require_same_size(c_.size(), A.cols(), "quadratic problem c");
  require_same_size(d_.size(), A.rows(), "quadratic problem d");
  norm_ = Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
}

Point QuadraticSaddleProblem::primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const {
  Vector x = (x_bar.value - tau * (c_ + op_.adjoint_apply(y_tilde))) / (1.0 + a_ * tau);
  return Point{std::move(x), Vector()};
}

Point QuadraticSaddleProblem::dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const {
  Vector y = (y_bar.value + sigma * (op_.apply(x_tilde) - d_)) / (1.0 + b_ * sigma);
  return Point{std::move(y), Vector()};
}

double QuadraticSaddleProblem::lagrangian(const Vector& x, const Vector& y) const {
  return 0.5 * a_ * x.squaredNorm() + c_.dot(x) + y.dot(op_.apply(x)) - 0.5 * b_ * y.squaredNorm() - d_.dot(y);
}

IterateState QuadraticSaddleProblem::initial_state() const {
  return IterateState::start(Point{Vector::Zero(op_.cols()), Vector()}, Point{Vector::Zero(op_.rows()), Vector()});
}

std::pair<Vector, Vector> QuadraticSaddleProblem::saddle_point() const {
  const Eigen::Index n = op_.cols(), m = op_.rows();
  Matrix K = Matrix::Zero(n + m, n + m);
  K.topLeftCorner(n, n) = a_ * Matrix::Identity(n, n);
  K.topRightCorner(n, m) = op_.base().transpose();
  K.bottomLeftCorner(m, n) = op_.base();
  K.bottomRightCorner(m, m) = -b_ * Matrix::Identity(m, m);
  Vector rhs(n + m);
  rhs << -c_, d_;
  Vector z = K.fullPivLu().solve(rhs);
  return {z.head(n), z.tail(m)};
}

}  // namespace nlpdhg
