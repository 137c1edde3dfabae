#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nlpdhg/saddle_problem.hpp"
#include "nlpdhg/schedule.hpp"

namespace nlpdhg {

// One step of the basic method:
//   x+ = pprox(y_k, x_k, tau), y+ = dprox(2 x+ - x_k, y_k, sigma).
IterateState step_constant(const SaddleProblem& p, const IterateState& s, double tau, double sigma);
// x+ = pprox(y_k + theta_k (y_k - y_{k-1}), x_k, tau_k), y+ = dprox(x+, y_k, sigma_k);
// then the schedule advances.
IterateState step_acc_primal(const SaddleProblem& p, const IterateState& s, StepSchedule& sched);
// y+ = dprox(x_k + theta_k (x_k - x_{k-1}), y_k, sigma_k), x+ = pprox(y+, x_k, tau_k);
// then the schedule advances.
IterateState step_acc_dual(const SaddleProblem& p, const IterateState& s, StepSchedule& sched);
// Constant (theta, tau, sigma) with either update order. extrapolation_sign
// multiplies the theta term.
IterateState step_linear_rate(const SaddleProblem& p, const IterateState& s, double theta, double tau,
                              double sigma, bool y_first, double extrapolation_sign = 1.0);
// Dispatches on the schedule's regime and advances it.
IterateState step(const SaddleProblem& p, const IterateState& s, StepSchedule& sched);

// Lyapunov quantity of the active regime at reference (x_ref, y_ref), using
// the schedule's current (theta_k, tau_k, sigma_k).
double delta_diag(const SaddleProblem& p, const IterateState& s, const StepSchedule& sched,
                  const Point& x_ref, const Point& y_ref);

// Running weighted sums of iterates. Geometric weights are rescaled
// together with the sums once they grow large.
class ErgodicAccumulator {
 public:
  void add(const Vector& x, const Vector& y, double weight);
  // weight_1 = 1, weight_{k+1} = weight_k / theta.
  void add_geometric(const Vector& x, const Vector& y, double theta);

  bool empty() const { return count_ == 0; }
  std::size_t count() const { return count_; }
  Vector x_avg() const { return sx_ / t_; }
  Vector y_avg() const { return sy_ / t_; }
  // T_K = sum of weights.
  double total_weight() const { return t_ * std::exp(log_scale_); }
  double log_total_weight() const { return std::log(t_) + log_scale_; }

 private:
  Vector sx_, sy_;
  double t_ = 0.0;
  double log_scale_ = 0.0;
  double current_ = 0.0;  // last geometric weight, relative to exp(log_scale_)
  std::size_t count_ = 0;
};

struct StopContext {
  std::size_t k;
  const Vector& x;
  const Vector& y;
};

// Composable stopping rule. The run stops at the first iteration where every
// enabled criterion holds; for each criterion the report records the
// iteration from which it held without interruption.
struct StoppingRule {
  std::size_t max_iters = 10000;
  // ||y_{k+1} - y_k|| <= tol ||y_{k+1}||; disabled when <= 0.
  double dual_rel_tol = 0.0;
  // Same test on the ergodic dual average; disabled when <= 0.
  double ergodic_rel_tol = 0.0;
  // Extra predicates (residual callbacks).
  std::vector<std::function<bool(const StopContext&)>> checks;

  static StoppingRule relative_dual_change(double tol, std::size_t max_iters) {
    StoppingRule r;
    r.max_iters = max_iters;
    r.dual_rel_tol = tol;
    r.ergodic_rel_tol = tol;
    return r;
  }
};

struct DiagFlags {
  bool delta = false;  // record delta_diag at (x_ref, y_ref) before each step and at the end
  Point x_ref, y_ref;
  std::size_t trace_every = 1;
};

struct SolveReport {
  std::string problem_id;
  std::string regime;
  std::size_t iterations = 0;
  bool converged = false;
  double wall_ms = 0.0;
  // Iteration (and elapsed time) from which the regular and ergodic criteria
  // held continuously up to termination.
  std::optional<std::size_t> regular_iters, ergodic_iters;
  double regular_ms = std::numeric_limits<double>::quiet_NaN();
  double ergodic_ms = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<std::size_t, double>> residual_trace;
  std::vector<double> delta_trace;
  Vector x, y;          // terminal iterates
  Vector x_avg, y_avg;  // ergodic averages
  double total_weight = 0.0;
  IterateState state;   // terminal state, for engine runs

  double terminal_primal_norm() const { return x.size() ? x.norm() : 0.0; }
  double terminal_dual_norm() const { return y.size() ? y.norm() : 0.0; }
};

std::string report_to_json(const SolveReport& r, int indent = 2);

// ||a - b|| / ||a||, with 0/0 read as 0.
double relative_change(const Vector& a, const Vector& b);

// Bookkeeping shared by the engine and the baselines: timing, stopping
// criteria and the residual trace.
class ConvergenceMonitor {
 public:
  ConvergenceMonitor(const StoppingRule& rule, std::size_t trace_every = 1);

  // dual_change / ergodic_change are relative changes; pass NaN for an
  // ergodic change when the method has no ergodic sequence. Returns true when
  // every criterion holds.
  bool observe(std::size_t k, double dual_change, double ergodic_change, const StopContext& ctx);
  double elapsed_ms() const;
  void fill(SolveReport& r) const;
  bool any_criterion() const;

 private:
  const StoppingRule& rule_;
  std::size_t trace_every_;
  std::chrono::steady_clock::time_point start_;
  std::optional<std::size_t> regular_k_, ergodic_k_;
  double regular_ms_ = std::numeric_limits<double>::quiet_NaN();
  double ergodic_ms_ = std::numeric_limits<double>::quiet_NaN();
  std::vector<bool> check_hit_;
  bool converged_ = false;
  std::vector<std::pair<std::size_t, double>> trace_;
};

SolveReport run(const SaddleProblem& p, StepSchedule sched, IterateState init, const StoppingRule& stop,
                const DiagFlags& diag = {});
inline SolveReport run(const SaddleProblem& p, const StepSchedule& sched, const StoppingRule& stop,
                       const DiagFlags& diag = {}) {
  return run(p, sched, p.initial_state(), stop, diag);
}

}  // namespace nlpdhg
