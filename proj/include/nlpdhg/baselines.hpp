#pragma once

#include "nlpdhg/engine.hpp"
#include "nlpdhg/lasso.hpp"
#include "nlpdhg/matrix_game.hpp"

namespace nlpdhg::baseline {

// Euclidean projection onto {u : ||u||_1 <= radius}, exact, by sorting.
Vector project_l1_ball(const Vector& v, double radius);

// Tolerance on the iterate change of the nested problem, measured after
// dividing by the prox parameter, and an iteration cap.
struct InnerSolverConfig {
  double tol = 1e-10;
  std::size_t max_iters = 10000;
};

// ---- linear PDHG for l1-constrained logistic regression ----

struct LinearPdhgLogregConfig {
  const Matrix* B = nullptr;
  double lambda = 1.0;
  double norm_B = 0.0;  // ||B||_{2,2}
  InnerSolverConfig inner;
};

struct LinearPdhgLogregState {
  Vector v, v_prev;  // primal, in the l1 ball
  Vector w;          // dual, in (0, 1/m)^m
  Vector inner_u;    // warm start of the nested problem
  StepSchedule sched;
  std::size_t k = 0;
  std::size_t last_inner_iters = 0;
};

// v_0 = 1/d, w_0 = 1/(2m), tau_0 = 2m/||B||^2, sigma_0 = 1/(2m), theta_0 = 0.
LinearPdhgLogregState linear_pdhg_logreg_init(const LinearPdhgLogregConfig& cfg);
// z = w + sigma B(v + theta (v - v_prev)); w+ = z - argmin_u {0.5||u - z||^2 +
// (sigma/m) sum log(1 + exp(u_i/sigma))}; v+ = proj(v - tau B^T w+).
void linear_pdhg_logreg_step(const LinearPdhgLogregConfig& cfg, LinearPdhgLogregState& s);
// Computes ||B||_{2,2} itself when norm_B <= 0 and counts that time.
SolveReport linear_pdhg_logreg(const Matrix& B, double lambda, const StoppingRule& stop, double norm_B = 0.0,
                               InnerSolverConfig inner = {});

// ---- forward-backward (FISTA) for l1-constrained logistic regression ----

// Step 4m/||B||^2, gradient (1/m) B^T sigmoid(B v), projection onto the ball.
// Stops on the relative change of v.
SolveReport fb_splitting_logreg(const Matrix& B, double lambda, const StoppingRule& stop, double norm_B = 0.0,
                                bool accelerated = true);

// ---- FISTA for the Lasso ----

// t_{k+1} = (1 + sqrt(1 + 4 t_k^2))/2, beta_{k+1} = (t_k - 1)/t_{k+1} clamped to
// [0, 1], t_0 = beta_0 = 0; step tau = m/||A||^2 unless given.
SolveReport fista_lasso(const LassoProblem& p, const StoppingRule& stop, double tau = 0.0);
double fista_t_next(double t);

// ---- games ----

struct GameState {
  Vector x, y;          // current strategies
  Vector x_bar, y_bar;  // predictions (PU, OMWU)
  Vector x_prev;        // linear PDHG extrapolation
  Vector inner_x, inner_y;
  std::size_t k = 0;
};

GameState game_state_from(const IterateState& s);

double eta_pu(double norm_1_inf);
double eta_omwu(double norm_1_inf);

// Predictive update: predictions from the current point, then the update
// from the predictions.
void pu_step(const MatrixGameProblem& g, GameState& s, double eta);
// Optimistic MWU: predictions from the previous predictions, then the update
// from the new predictions.
void omwu_step(const MatrixGameProblem& g, GameState& s, double eta);

SolveReport pu_solve(const MatrixGameProblem& g, const StoppingRule& stop, double eta = 0.0);
SolveReport omwu_solve(const MatrixGameProblem& g, const StoppingRule& stop, double eta = 0.0);

// Euclidean y-first linear-rate PDHG with parameters from ||A||_{2,2}; the
// entropy proxes are evaluated through the Moreau identity with a nested
// log-sum-exp problem.
struct LinearPdhgGameConfig {
  double theta = 0.0, tau = 0.0, sigma = 0.0;
  InnerSolverConfig inner;
};
LinearPdhgGameConfig linear_pdhg_game_config(const MatrixGameProblem& g, double norm_A_2_2, InnerSolverConfig inner = {});
void linear_pdhg_game_step(const MatrixGameProblem& g, const LinearPdhgGameConfig& cfg, GameState& s);
SolveReport linear_pdhg_game(const MatrixGameProblem& g, const StoppingRule& stop, double norm_A_2_2 = 0.0,
                             InnerSolverConfig inner = {});

// Euclidean prox of c * (H + indicator of the simplex) at v, with warm start
// z (updated in place), via the Moreau identity.
Vector entropy_prox_euclidean(const Vector& v, double c, Vector& z, const InnerSolverConfig& inner);
// Euclidean prox of sigma * psi at z (logistic conjugate pair), warm start u.
Vector logistic_dual_prox_euclidean(const Vector& z, double sigma, Eigen::Index m, Vector& u,
                                    const InnerSolverConfig& inner, std::size_t* iters = nullptr);

}  // namespace nlpdhg::baseline
