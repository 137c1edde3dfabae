#include "nlpdhg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>

namespace nlpdhg::baseline {

Vector project_l1_ball(const Vector& v, double radius) {
  if (!(radius > 0.0)) throw ConfigError("project_l1_ball: radius must be positive");
  if (v.lpNorm<1>() <= radius) return v;
  std::vector<double> u(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) u[i] = std::abs(v[i]);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cs = 0.0, thr = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cs += u[j];
    const double t = (cs - radius) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) thr = t;
  }
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) - thr;
    out[i] = a > 0.0 ? std::copysign(a, v[i]) : 0.0;
  }
  return out;
}

namespace {

// Accelerated gradient descent for a 1-strongly convex function whose
// gradient is L-Lipschitz; u is the warm start and holds the minimiser.
constexpr double kEps = std::numeric_limits<double>::epsilon();

std::size_t accelerated_descent(Vector& u, double L, const std::function<Vector(const Vector&)>& grad,
                                const InnerSolverConfig& inner) {
  const double sq = std::sqrt(L);
  const double beta = (sq - 1.0) / (sq + 1.0);
  Vector prev = u;
  double change = 0.0;
  for (std::size_t t = 1; t <= inner.max_iters; ++t) {
    Vector yv = u + beta * (u - prev);
    Vector next = yv - grad(yv) / L;
    change = (next - u).lpNorm<Eigen::Infinity>();
    prev = std::move(u);
    u = std::move(next);
    if (change <= inner.tol) return t;
  }
  throw ConvergenceError("inner forward-backward did not converge", change);
}

double sigmoid(double t) { return t >= 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

Vector sigmoid(const Vector& v) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = sigmoid(v[i]);
  return out;
}

// Plays the role of the dual sequence for stopping purposes.
struct Tracked {
  ErgodicAccumulator erg;
  Vector y_avg_prev;
  double ergodic_change(const Vector& x, const Vector& y, double weight) {
    erg.add(x, y, weight);
    Vector ya = erg.y_avg();
    const double c = y_avg_prev.size() ? relative_change(ya, y_avg_prev) : std::numeric_limits<double>::infinity();
    y_avg_prev = std::move(ya);
    return c;
  }
};

double timed_norm_2_2(const Matrix& M, double& ms) {
  const auto t0 = std::chrono::steady_clock::now();
  const double n = norm_2_2(LinearOperator::dense(M)).value;
  ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return n;
}

void finish(SolveReport& rep, const ConvergenceMonitor& mon, double extra_ms) {
  mon.fill(rep);
  rep.wall_ms += extra_ms;
  if (rep.regular_iters) rep.regular_ms += extra_ms;
  if (rep.ergodic_iters) rep.ergodic_ms += extra_ms;
}

}  // namespace

Vector logistic_dual_prox_euclidean(const Vector& z, double sigma, Eigen::Index m, Vector& u,
                                    const InnerSolverConfig& inner, std::size_t* iters) {
  // min_u 0.5||u - z||^2 + (sigma/m) sum softplus(u_i/sigma); the gradient
  // u - z + sigmoid(u/sigma)/m is (1 + 1/(4 m sigma))-Lipschitz.
  const double md = static_cast<double>(m);
  const double L = 1.0 + 1.0 / (4.0 * md * sigma);
  if (u.size() != z.size()) u = z;
  auto grad = [&](const Vector& uu) -> Vector { return uu - z + sigmoid(uu / sigma) / md; };
  // the answer is read off u/sigma, so the tolerance lives on that scale,
  // floored a few ulps above the resolution of u
  InnerSolverConfig scaled = inner;
  scaled.tol = std::max(inner.tol * sigma, 4.0 * kEps * z.lpNorm<Eigen::Infinity>());
  const std::size_t it = accelerated_descent(u, L, grad, scaled);
  if (iters) *iters = it;
  // Moreau: prox_{sigma psi}(z) = z - u*; at u* this equals sigmoid(u*/sigma)/m,
  // which stays inside the open box.
  return sigmoid(u / sigma) / md;
}

Vector entropy_prox_euclidean(const Vector& v, double c, Vector& z, const InnerSolverConfig& inner) {
  // min_z 0.5||z - v||^2 + c lse(z/c); gradient z - v + softmax(z/c).
  const double L = 1.0 + 1.0 / c;
  if (z.size() != v.size()) z = v;
  auto grad = [&](const Vector& zz) -> Vector { return zz - v + softmax(zz / c); };
  InnerSolverConfig scaled = inner;
  scaled.tol = std::max(inner.tol * c, 4.0 * kEps * v.lpNorm<Eigen::Infinity>());
  accelerated_descent(z, L, grad, scaled);
  // v - z* = softmax(z*/c) at the minimiser
  return softmax(z / c);
}

// ---------------- logistic regression ----------------

LinearPdhgLogregState linear_pdhg_logreg_init(const LinearPdhgLogregConfig& cfg) {
  const Matrix& B = *cfg.B;
  const double md = static_cast<double>(B.rows());
  LinearPdhgLogregState s;
  s.v = Vector::Constant(B.cols(), 1.0 / static_cast<double>(B.cols()));
  if (s.v.lpNorm<1>() > cfg.lambda) s.v = project_l1_ball(s.v, cfg.lambda);
  s.v_prev = s.v;
  s.w = Vector::Constant(B.rows(), 0.5 / md);
  s.sched = StepSchedule::acc_dual(4.0 * md, cfg.norm_B, 2.0 * md / (cfg.norm_B * cfg.norm_B), 0.0);
  return s;
}

void linear_pdhg_logreg_step(const LinearPdhgLogregConfig& cfg, LinearPdhgLogregState& s) {
  const Matrix& B = *cfg.B;
  const double theta = s.sched.theta(), tau = s.sched.tau(), sigma = s.sched.sigma();
  Vector z = s.w + sigma * (B * (s.v + theta * (s.v - s.v_prev)));
  Vector w = logistic_dual_prox_euclidean(z, sigma, B.rows(), s.inner_u, cfg.inner, &s.last_inner_iters);
  Vector v = project_l1_ball(s.v - tau * (B.transpose() * w), cfg.lambda);
  s.v_prev = std::move(s.v);
  s.v = std::move(v);
  s.w = std::move(w);
  s.sched.advance();
  ++s.k;
}

SolveReport linear_pdhg_logreg(const Matrix& B, double lambda, const StoppingRule& stop, double norm_B,
                               InnerSolverConfig inner) {
  double norm_ms = 0.0;
  if (norm_B <= 0.0) norm_B = timed_norm_2_2(B, norm_ms);
  LinearPdhgLogregConfig cfg{&B, lambda, norm_B, inner};
  LinearPdhgLogregState s = linear_pdhg_logreg_init(cfg);
  ConvergenceMonitor mon(stop);
  Tracked tr;
  for (std::size_t it = 0; it < stop.max_iters; ++it) {
    const double weight = s.sched.ergodic_weight();
    Vector w_old = s.w;
    linear_pdhg_logreg_step(cfg, s);
    if (!s.v.allFinite() || !s.w.allFinite()) throw NumericalError("non-finite iterate", s.k);
    const double ec = tr.ergodic_change(s.v, s.w, weight);
    if (mon.observe(s.k, relative_change(s.w, w_old), ec, StopContext{s.k, s.v, s.w})) break;
  }
  SolveReport rep;
  rep.problem_id = "l1logreg";
  rep.regime = "linear-pdhg";
  finish(rep, mon, norm_ms);
  rep.iterations = s.k;
  rep.x = s.v;
  rep.y = s.w;
  rep.x_avg = tr.erg.empty() ? s.v : tr.erg.x_avg();
  rep.y_avg = tr.erg.empty() ? s.w : tr.erg.y_avg();
  rep.total_weight = tr.erg.empty() ? 0.0 : tr.erg.total_weight();
  return rep;
}

SolveReport fb_splitting_logreg(const Matrix& B, double lambda, const StoppingRule& stop, double norm_B,
                                bool accelerated) {
  double norm_ms = 0.0;
  if (norm_B <= 0.0) norm_B = timed_norm_2_2(B, norm_ms);
  const double md = static_cast<double>(B.rows());
  const double tau = 4.0 * md / (norm_B * norm_B);
  Vector v = Vector::Constant(B.cols(), 1.0 / static_cast<double>(B.cols()));
  if (v.lpNorm<1>() > lambda) v = project_l1_ball(v, lambda);
  Vector v_prev = v;
  double t = 0.0, beta = 0.0;
  ConvergenceMonitor mon(stop);
  std::size_t k = 0;
  for (; k < stop.max_iters;) {
    Vector u = v + beta * (v - v_prev);
    Vector grad = B.transpose() * sigmoid(B * u) / md;
    Vector v_new = project_l1_ball(u - tau * grad, lambda);
    v_prev = std::move(v);
    v = std::move(v_new);
    ++k;
    if (accelerated) {
      const double t_next = fista_t_next(t);
      beta = std::clamp((t - 1.0) / t_next, 0.0, 1.0);
      t = t_next;
    }
    if (!v.allFinite()) throw NumericalError("non-finite iterate", k);
    if (mon.observe(k, relative_change(v, v_prev), std::numeric_limits<double>::quiet_NaN(), StopContext{k, v, v}))
      break;
  }
  SolveReport rep;
  rep.problem_id = "l1logreg";
  rep.regime = accelerated ? "fista" : "forward-backward";
  finish(rep, mon, norm_ms);
  rep.iterations = k;
  rep.x = v;
  rep.y = sigmoid(B * v) / md;
  rep.x_avg = rep.x;
  rep.y_avg = rep.y;
  return rep;
}

// ---------------- Lasso ----------------

double fista_t_next(double t) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t)); }

SolveReport fista_lasso(const LassoProblem& p, const StoppingRule& stop, double tau) {
  double norm_ms = 0.0;
  if (tau <= 0.0) {
    const double n = timed_norm_2_2(p.A(), norm_ms);
    tau = static_cast<double>(p.m()) / (n * n);
  }
  const Matrix& A = p.A();
  const double md = static_cast<double>(p.m());
  Vector x = Vector::Zero(A.cols()), x_prev = x;
  double t = 0.0, beta = 0.0;
  ConvergenceMonitor mon(stop);
  std::size_t k = 0;
  for (; k < stop.max_iters;) {
    Vector w = x + beta * (x - x_prev);
    Vector x_new = shrink1(w - tau * (A.transpose() * (A * w - p.b())) / md, p.lambda() * tau);
    x_prev = std::move(x);
    x = std::move(x_new);
    ++k;
    const double t_next = fista_t_next(t);
    beta = std::clamp((t - 1.0) / t_next, 0.0, 1.0);
    t = t_next;
    if (!x.allFinite()) throw NumericalError("non-finite iterate", k);
    if (mon.observe(k, relative_change(x, x_prev), std::numeric_limits<double>::quiet_NaN(), StopContext{k, x, x}))
      break;
  }
  SolveReport rep;
  rep.problem_id = "lasso";
  rep.regime = "fista";
  finish(rep, mon, norm_ms);
  rep.iterations = k;
  rep.x = x;
  rep.y = (A * x - p.b()) / md;
  rep.x_avg = rep.x;
  rep.y_avg = rep.y;
  return rep;
}

// ---------------- games ----------------

GameState game_state_from(const IterateState& s) {
  GameState g;
  g.x = s.x.value;
  g.y = s.y.value;
  g.x_bar = g.x;
  g.y_bar = g.y;
  g.x_prev = g.x;
  return g;
}

double eta_pu(double n) { return 1.0 / (2.0 + n); }

double eta_omwu(double n) {
  const double a = 1.0 / (2.0 + 2.0 * n);
  return n > 0.0 ? std::min(a, 1.0 / (4.0 * n)) : a;
}

namespace {

// normalise(p^{1 - eta lambda} exp(eta * g)), in log space
Vector mw_update(const Vector& p, double eta, double lambda, const Vector& g) {
  Vector l = (1.0 - eta * lambda) * p.array().log().matrix() + eta * g;
  return normalize_log_weights(l);
}

template <class Step>
SolveReport game_loop(const MatrixGameProblem& g, const StoppingRule& stop, const char* name, Step&& step,
                      GameState s, double extra_ms) {
  ConvergenceMonitor mon(stop);
  for (std::size_t it = 0; it < stop.max_iters; ++it) {
    Vector y_old = s.y;
    step(s);
    ++s.k;
    if (!s.x.allFinite() || !s.y.allFinite()) throw NumericalError("non-finite iterate", s.k);
    if (mon.observe(s.k, relative_change(s.y, y_old), std::numeric_limits<double>::quiet_NaN(),
                    StopContext{s.k, s.x, s.y}))
      break;
  }
  SolveReport rep;
  rep.problem_id = g.id();
  rep.regime = name;
  finish(rep, mon, extra_ms);
  rep.iterations = s.k;
  rep.x = s.x;
  rep.y = s.y;
  rep.x_avg = s.x;
  rep.y_avg = s.y;
  return rep;
}

}  // namespace

void pu_step(const MatrixGameProblem& g, GameState& s, double eta) {
  const LinearOperator& A = g.op();
  const double lam = g.lambda();
  s.y_bar = mw_update(s.y, eta, lam, A.apply(s.x));
  s.x_bar = mw_update(s.x, eta, lam, -A.adjoint_apply(s.y));
  s.y = mw_update(s.y, eta, lam, A.apply(s.x_bar));
  s.x = mw_update(s.x, eta, lam, -A.adjoint_apply(s.y_bar));
}

void omwu_step(const MatrixGameProblem& g, GameState& s, double eta) {
  const LinearOperator& A = g.op();
  const double lam = g.lambda();
  Vector y_bar = mw_update(s.y, eta, lam, A.apply(s.x_bar));
  Vector x_bar = mw_update(s.x, eta, lam, -A.adjoint_apply(s.y_bar));
  s.y_bar = std::move(y_bar);
  s.x_bar = std::move(x_bar);
  s.y = mw_update(s.y, eta, lam, A.apply(s.x_bar));
  s.x = mw_update(s.x, eta, lam, -A.adjoint_apply(s.y_bar));
}

SolveReport pu_solve(const MatrixGameProblem& g, const StoppingRule& stop, double eta) {
  if (eta <= 0.0) eta = eta_pu(norm_1_inf(g.op()));
  return game_loop(g, stop, "pu", [&](GameState& s) { pu_step(g, s, eta); }, game_state_from(g.initial_state()), 0.0);
}

SolveReport omwu_solve(const MatrixGameProblem& g, const StoppingRule& stop, double eta) {
  if (eta <= 0.0) eta = eta_omwu(norm_1_inf(g.op()));
  return game_loop(g, stop, "omwu", [&](GameState& s) { omwu_step(g, s, eta); }, game_state_from(g.initial_state()),
                   0.0);
}

LinearPdhgGameConfig linear_pdhg_game_config(const MatrixGameProblem& g, double norm_A_2_2, InnerSolverConfig inner) {
  const LinearRateParams p = linear_rate_params(g.lambda(), g.lambda(), norm_A_2_2);
  return {p.theta, p.tau, p.sigma, inner};
}

void linear_pdhg_game_step(const MatrixGameProblem& g, const LinearPdhgGameConfig& cfg, GameState& s) {
  const LinearOperator& A = g.op();
  const double lam = g.lambda();
  Vector vy = s.y + cfg.sigma * A.apply(s.x + cfg.theta * (s.x - s.x_prev));
  Vector y = entropy_prox_euclidean(vy, lam * cfg.sigma, s.inner_y, cfg.inner);
  Vector vx = s.x - cfg.tau * A.adjoint_apply(y);
  Vector x = entropy_prox_euclidean(vx, lam * cfg.tau, s.inner_x, cfg.inner);
  s.x_prev = std::move(s.x);
  s.x = std::move(x);
  s.y = std::move(y);
}

SolveReport linear_pdhg_game(const MatrixGameProblem& g, const StoppingRule& stop, double norm_A_2_2,
                             InnerSolverConfig inner) {
  double norm_ms = 0.0;
  if (norm_A_2_2 <= 0.0) norm_A_2_2 = timed_norm_2_2(g.A(), norm_ms);
  const LinearPdhgGameConfig cfg = linear_pdhg_game_config(g, norm_A_2_2, inner);
  GameState s = game_state_from(g.initial_state());
  ConvergenceMonitor mon(stop);
  ErgodicAccumulator erg;
  Vector y_avg_prev;
  for (std::size_t it = 0; it < stop.max_iters; ++it) {
    Vector y_old = s.y;
    linear_pdhg_game_step(g, cfg, s);
    ++s.k;
    if (!s.x.allFinite() || !s.y.allFinite()) throw NumericalError("non-finite iterate", s.k);
    erg.add_geometric(s.x, s.y, cfg.theta);
    Vector ya = erg.y_avg();
    const double ec = y_avg_prev.size() ? relative_change(ya, y_avg_prev) : std::numeric_limits<double>::infinity();
    y_avg_prev = std::move(ya);
    if (mon.observe(s.k, relative_change(s.y, y_old), ec, StopContext{s.k, s.x, s.y})) break;
  }
  SolveReport rep;
  rep.problem_id = g.id();
  rep.regime = "linear-pdhg";
  finish(rep, mon, norm_ms);
  rep.iterations = s.k;
  rep.x = s.x;
  rep.y = s.y;
  rep.x_avg = erg.empty() ? s.x : erg.x_avg();
  rep.y_avg = erg.empty() ? s.y : erg.y_avg();
  rep.total_weight = erg.empty() ? 0.0 : erg.total_weight();
  return rep;
}

}  // namespace nlpdhg::baseline
