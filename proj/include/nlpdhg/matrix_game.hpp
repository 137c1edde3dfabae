#pragma once

#include <cstdint>
#include <utility>

#include "nlpdhg/engine.hpp"

namespace nlpdhg {

// min_{x in simplex} max_{y in simplex} lambda H(x) + <y, A x> - lambda H(y),
// H(x) = sum x log x.
class MatrixGameProblem : public SaddleProblem {
 public:
  // init_seed selects the random starting pair of initial_state().
  MatrixGameProblem(Matrix A, double lambda, std::uint64_t init_seed = 0);

  // x ∝ (x_bar exp(-tau A^T y_tilde))^{1/(1 + lambda tau)}
  Point primal_prox(const Vector& y_tilde, const Point& x_bar, double tau) const override;
  // y ∝ (y_bar exp(+sigma A x_tilde))^{1/(1 + lambda sigma)}
  Point dual_prox(const Vector& x_tilde, const Point& y_bar, double sigma) const override;

  const LinearOperator& op() const override { return op_; }
  double op_norm() const override { return norm_; }
  double gamma_g() const override { return lambda_; }
  double gamma_h_star() const override { return lambda_; }
  const BregmanGeometry& geom_x() const override { return geom_x_; }
  const BregmanGeometry& geom_y() const override { return geom_y_; }
  std::string id() const override { return "matrix-game"; }
  double lagrangian(const Vector& x, const Vector& y) const override;
  // Random positive vectors, normalised.
  IterateState initial_state() const override;
  IterateState uniform_state() const;

  // Linear-rate y-first schedule with gamma_g = gamma_h* = lambda. A negative
  // sign selects the minus-sign extrapolation variant.
  StepSchedule default_schedule(double extrapolation_sign = 1.0) const;

  double lambda() const { return lambda_; }
  const Matrix& A() const { return op_.base(); }

 private:
  LinearOperator op_;
  double lambda_;
  double norm_;
  std::uint64_t init_seed_;
  BregmanGeometry geom_x_;
  BregmanGeometry geom_y_;
};

// (max_j |[A^T y]_j + lambda(1 + log x_j) - c|, ||y - softmax(A x / lambda)||_1)
// with c the mean of [A^T y]_j + lambda(1 + log x_j).
std::pair<double, double> game_optimality_residual(const MatrixGameProblem& p, const Vector& x, const Vector& y);

// One explicit y-first linear-rate step of the game.
IterateState matrix_game_step(const MatrixGameProblem& p, const IterateState& s, double theta, double tau,
                              double sigma, double extrapolation_sign = 1.0);

// exp(v - lse(v))
Vector softmax(const Vector& v);

}  // namespace nlpdhg
