#include "nlpdhg/l1logreg.hpp"

#include <cmath>

namespace nlpdhg {

L1LogRegProblem::L1LogRegProblem(Matrix B, double lambda)
    : op_(LinearOperator::scaled_concat(std::move(B), lambda)),
      norm_(norm_1_2(op_)),
      geom_x_(BregmanGeometry::negative_entropy(op_.cols())),
      geom_y_(BregmanGeometry::binary_entropy_average(op_.rows(), 1.0 / (4.0 * static_cast<double>(op_.rows())))) {
  if (!(norm_ > 0.0)) throw ConfigError("l1logreg: B must be nonzero");
}

Vector L1LogRegProblem::dual_map(const Vector& z) const {
  const double md = static_cast<double>(m());
  return (1.0 / (md * (1.0 + (-z.array()).exp()))).matrix();
}

Point L1LogRegProblem::primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const {
  Vector lift = x_bar.lift - tau * op_.adjoint_apply(y_tilde);
  return geom_x_.from_lift(lift);
}

Point L1LogRegProblem::dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const {
  const double c = 4.0 * static_cast<double>(m()) * sigma;
  Vector w = (c * op_.apply(x_tilde) + y_bar.lift) / (1.0 + c);
  return geom_y_.from_lift(w);
}

double L1LogRegProblem::lagrangian(const Vector& x, const Vector& y) const {
  // h*(y) = psi(y) = 4m * phi_Y(y)
  return y.dot(op_.apply(x)) - 4.0 * static_cast<double>(m()) * geom_y_.value(y);
}

IterateState L1LogRegProblem::initial_state() const {
  const double n = static_cast<double>(op_.cols());
  Point x{Vector::Constant(op_.cols(), 1.0 / n), Vector::Constant(op_.cols(), -std::log(n))};
  Point y{Vector::Constant(m(), 0.5 / static_cast<double>(m())), Vector::Zero(m())};
  return IterateState::start(std::move(x), std::move(y));
}

StepSchedule L1LogRegProblem::default_schedule() const {
  const double md = static_cast<double>(m());
  return StepSchedule::acc_dual(4.0 * md, norm_, 2.0 * md / (norm_ * norm_), 0.0);
}

Vector recover_v(const Vector& x, double lambda) {
  if (x.size() % 2 != 0) throw DimensionError("recover_v: odd dimension");
  const Eigen::Index d = x.size() / 2;
  return lambda * (x.head(d) - x.tail(d));
}

double l1logreg_objective(const Matrix& B, const Vector& v) {
  Vector z = B * v;
  double s = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) s += softplus(z[i]);
  return s / static_cast<double>(z.size());
}

double l1logreg_dual_residual(const L1LogRegProblem& p, const Vector& x, const Vector& y) {
  return (y - p.dual_map(p.op().apply(x))).norm();
}

std::vector<Eigen::Index> support_from_scores(const Vector& scores, double tol) {
  std::vector<Eigen::Index> out;
  if (scores.size() == 0) return out;
  const double mx = scores.maxCoeff();
  for (Eigen::Index j = 0; j < scores.size(); ++j)
    if (scores[j] >= mx - tol) out.push_back(j);
  return out;
}

std::vector<Eigen::Index> support_from_dual(const L1LogRegProblem& p, const Vector& y, double tol) {
  return support_from_scores(-p.op().adjoint_apply(y), tol);
}

IterateState l1logreg_step(const L1LogRegProblem& p, const IterateState& s, StepSchedule& sched) {
  if (sched.regime() != Regime::AccDual) throw ConfigError("l1logreg_step requires the acc-dual regime");
  const double md = static_cast<double>(p.m());
  const double theta = sched.extrapolation_sign() * sched.theta();
  const double tau = sched.tau(), sigma = sched.sigma();
  const LinearOperator& A = p.op();

  // w_{k+1} = (4 m sigma_k A(x_k + theta_k (x_k - x_{k-1})) + w_k) / (1 + 4 m sigma_k)
  Vector x_ext = s.x.value + theta * (s.x.value - s.x_prev.value);
  const double c = 4.0 * md * sigma;
  Vector w = (c * A.apply(x_ext) + s.y.lift) / (1.0 + c);
  Point y_new{p.dual_map(w), w};

  // x_{k+1} ∝ x_k exp(-tau_k A^T y_{k+1}), normalised through log-sum-exp
  Vector lx = s.x.lift - tau * A.adjoint_apply(y_new.value);
  Point x_new;
  x_new.value = normalize_log_weights(lx);
  x_new.lift = std::move(lx);

  IterateState n;
  n.x_prev = s.x;
  n.y_prev = s.y;
  n.x = std::move(x_new);
  n.y = std::move(y_new);
  n.k = s.k + 1;
  sched.advance();
  return n;
}

}  // namespace nlpdhg
