#include "nlpdhg/matrix_game.hpp"

#include <cmath>

#include "nlpdhg/rng.hpp"

namespace nlpdhg {

MatrixGameProblem::MatrixGameProblem(Matrix A, double lambda, std::uint64_t init_seed)
    : op_(LinearOperator::dense(std::move(A))),
      lambda_(lambda),
      norm_(0.0),
      init_seed_(init_seed),
      geom_x_(BregmanGeometry::negative_entropy(op_.cols())),
      geom_y_(BregmanGeometry::negative_entropy(op_.rows())) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("matrix game: lambda must be positive");
  norm_ = norm_1_inf(op_);
  // The zero game has no coupling; any positive norm keeps the schedule valid.
  if (norm_ == 0.0) norm_ = 1e-12;
}

Vector softmax(const Vector& v) {
  Vector l = v;
  return normalize_log_weights(l);
}

Point MatrixGameProblem::primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const {
  Vector lift = (x_bar.lift - tau * op_.adjoint_apply(y_tilde)) / (1.0 + lambda_ * tau);
  return geom_x_.from_lift(lift);
}

Point MatrixGameProblem::dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const {
  Vector lift = (y_bar.lift + sigma * op_.apply(x_tilde)) / (1.0 + lambda_ * sigma);
  return geom_y_.from_lift(lift);
}

double MatrixGameProblem::lagrangian(const Vector& x, const Vector& y) const {
  return lambda_ * geom_x_.value(x) + y.dot(op_.apply(x)) - lambda_ * geom_y_.value(y);
}

IterateState MatrixGameProblem::initial_state() const {
  Rng rx(init_seed_, Stream::InitX), ry(init_seed_, Stream::InitY);
  Vector x(op_.cols()), y(op_.rows());
  for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = rx.uniform(0.5, 1.5);
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = ry.uniform(0.5, 1.5);
  x /= x.sum();
  y /= y.sum();
  return IterateState::start(geom_x_.make_point(x), geom_y_.make_point(y));
}

IterateState MatrixGameProblem::uniform_state() const {
  return IterateState::start(geom_x_.make_point(Vector::Constant(op_.cols(), 1.0 / static_cast<double>(op_.cols()))),
                             geom_y_.make_point(Vector::Constant(op_.rows(), 1.0 / static_cast<double>(op_.rows()))));
}

StepSchedule MatrixGameProblem::default_schedule(double extrapolation_sign) const {
  StepSchedule s = StepSchedule::linear_rate(lambda_, lambda_, norm_, true);
  s.set_extrapolation_sign(extrapolation_sign);
  return s;
}

std::pair<double, double> game_optimality_residual(const MatrixGameProblem& p, const Vector& x, const Vector& y) {
  p.geom_x().check_interior(x, "game residual (x)");
  p.geom_y().check_interior(y, "game residual (y)");
  Vector r = p.op().adjoint_apply(y) + p.lambda() * (1.0 + x.array().log()).matrix();
  const double c = r.mean();
  const double first = (r.array() - c).abs().maxCoeff();
  const double second = (y - softmax(p.op().apply(x) / p.lambda())).lpNorm<1>();
  return {first, second};
}

IterateState matrix_game_step(const MatrixGameProblem& p, const IterateState& s, double theta, double tau,
                              double sigma, double extrapolation_sign) {
  const double lam = p.lambda();
  const double th = extrapolation_sign * theta;
  Vector x_ext = s.x.value + th * (s.x.value - s.x_prev.value);
  Vector ly = (s.y.lift + sigma * p.op().apply(x_ext)) / (1.0 + lam * sigma);
  Point y_new;
  y_new.value = normalize_log_weights(ly);
  y_new.lift = std::move(ly);
  Vector lx = (s.x.lift - tau * p.op().adjoint_apply(y_new.value)) / (1.0 + lam * tau);
  Point x_new;
  x_new.value = normalize_log_weights(lx);
  x_new.lift = std::move(lx);
  IterateState n;
  n.x_prev = s.x;
  n.y_prev = s.y;
  n.x = std::move(x_new);
  n.y = std::move(y_new);
  n.k = s.k + 1;
  return n;
}

}  // namespace nlpdhg
