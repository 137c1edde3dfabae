#include "nlpdhg/engine.hpp"

#include <json.hpp>

namespace nlpdhg {

double SaddleProblem::lagrangian(const Vector&, const Vector&) const {
  throw ConfigError(id() + ": lagrangian not available");
}

namespace {

Vector extrapolate(const Point& cur, const Point& prev, double theta) {
  if (theta == 0.0) return cur.value;
  return cur.value + theta * (cur.value - prev.value);
}

IterateState advance_state(const IterateState& s, Point x_new, Point y_new) {
  IterateState n;
  n.x_prev = s.x;
  n.y_prev = s.y;
  n.x = std::move(x_new);
  n.y = std::move(y_new);
  n.k = s.k + 1;
  return n;
}

IterateState x_first(const SaddleProblem& p, const IterateState& s, double theta, double tau, double sigma) {
  Point x_new = p.primal_prox(extrapolate(s.y, s.y_prev, theta), s.x, tau);
  Point y_new = p.dual_prox(x_new.value, s.y, sigma);
  return advance_state(s, std::move(x_new), std::move(y_new));
}

IterateState y_first(const SaddleProblem& p, const IterateState& s, double theta, double tau, double sigma) {
  Point y_new = p.dual_prox(extrapolate(s.x, s.x_prev, theta), s.y, sigma);
  Point x_new = p.primal_prox(y_new.value, s.x, tau);
  return advance_state(s, std::move(x_new), std::move(y_new));
}

void require_regime(const StepSchedule& sched, Regime r) {
  if (sched.regime() != r) throw ConfigError("schedule regime is " + regime_name(sched.regime()) + ", expected " + regime_name(r));
}

bool point_finite(const Point& p) { return p.value.allFinite() && (p.lift.size() == 0 || !p.lift.hasNaN()); }

}  // namespace

IterateState step_constant(const SaddleProblem& p, const IterateState& s, double tau, double sigma) {
  Point x_new = p.primal_prox(s.y.value, s.x, tau);
  Vector x_tilde = 2.0 * x_new.value - s.x.value;
  Point y_new = p.dual_prox(x_tilde, s.y, sigma);
  return advance_state(s, std::move(x_new), std::move(y_new));
}

IterateState step_acc_primal(const SaddleProblem& p, const IterateState& s, StepSchedule& sched) {
  require_regime(sched, Regime::AccPrimal);
  if (!(p.gamma_g() > 0.0)) throw ConfigError("acc-primal requires gamma_g > 0");
  IterateState n = x_first(p, s, sched.extrapolation_sign() * sched.theta(), sched.tau(), sched.sigma());
  sched.advance();
  return n;
}

IterateState step_acc_dual(const SaddleProblem& p, const IterateState& s, StepSchedule& sched) {
  require_regime(sched, Regime::AccDual);
  if (!(p.gamma_h_star() > 0.0)) throw ConfigError("acc-dual requires gamma_h_star > 0");
  IterateState n = y_first(p, s, sched.extrapolation_sign() * sched.theta(), sched.tau(), sched.sigma());
  sched.advance();
  return n;
}

IterateState step_linear_rate(const SaddleProblem& p, const IterateState& s, double theta, double tau,
                              double sigma, bool y_first_order, double extrapolation_sign) {
  if (!(p.gamma_g() > 0.0) || !(p.gamma_h_star() > 0.0))
    throw ConfigError("linear-rate regime requires gamma_g > 0 and gamma_h_star > 0");
  const double th = extrapolation_sign * theta;
  return y_first_order ? y_first(p, s, th, tau, sigma) : x_first(p, s, th, tau, sigma);
}

IterateState step(const SaddleProblem& p, const IterateState& s, StepSchedule& sched) {
  switch (sched.regime()) {
    case Regime::Constant: {
      IterateState n = step_constant(p, s, sched.tau(), sched.sigma());
      sched.advance();
      return n;
    }
    case Regime::AccPrimal: return step_acc_primal(p, s, sched);
    case Regime::AccDual: return step_acc_dual(p, s, sched);
    case Regime::LinearRateXFirst:
    case Regime::LinearRateYFirst: {
      IterateState n = step_linear_rate(p, s, sched.theta(), sched.tau(), sched.sigma(),
                                        sched.regime() == Regime::LinearRateYFirst, sched.extrapolation_sign());
      sched.advance();
      return n;
    }
  }
  throw ConfigError("unknown regime");
}

double delta_diag(const SaddleProblem& p, const IterateState& s, const StepSchedule& sched, const Point& x_ref,
                  const Point& y_ref) {
  const BregmanGeometry& gx = p.geom_x();
  const BregmanGeometry& gy = p.geom_y();
  gx.check_closure(x_ref.value, "delta_diag(x_ref)");
  gy.check_closure(y_ref.value, "delta_diag(y_ref)");
  const LinearOperator& A = p.op();
  const double tau = sched.tau(), sigma = sched.sigma(), theta = sched.theta();
  const double dx = gx.divergence(x_ref, s.x) / tau;
  const double dy = gy.divergence(y_ref, s.y) / sigma;
  switch (sched.regime()) {
    case Regime::Constant:
      return dx + dy - (y_ref.value - s.y.value).dot(A.apply(x_ref.value - s.x.value));
    case Regime::AccPrimal:
      return dx + dy + gy.divergence(s.y, s.y_prev) / sigma +
             theta * (s.y.value - s.y_prev.value).dot(A.apply(x_ref.value - s.x.value));
    case Regime::AccDual:
      return dx + dy + gx.divergence(s.x, s.x_prev) / tau +
             theta * (s.y.value - y_ref.value).dot(A.apply(s.x.value - s.x_prev.value));
    case Regime::LinearRateXFirst:
      return dx + dy + theta * gy.divergence(s.y, s.y_prev) / sigma +
             theta * (s.y.value - s.y_prev.value).dot(A.apply(x_ref.value - s.x.value));
    case Regime::LinearRateYFirst:
      return dx + dy + theta * gx.divergence(s.x, s.x_prev) / tau +
             theta * (s.y.value - y_ref.value).dot(A.apply(s.x.value - s.x_prev.value));
  }
  return 0.0;
}

void ErgodicAccumulator::add(const Vector& x, const Vector& y, double weight) {
  if (count_ == 0) {
    sx_ = Vector::Zero(x.size());
    sy_ = Vector::Zero(y.size());
  }
  sx_ += weight * x;
  sy_ += weight * y;
  t_ += weight;
  ++count_;
}

void ErgodicAccumulator::add_geometric(const Vector& x, const Vector& y, double theta) {
  if (count_ == 0) {
    current_ = 1.0;
  } else {
    current_ /= theta;
    if (current_ > 1e100) {
      // common rescaling leaves the averages unchanged
      sx_ /= current_;
      sy_ /= current_;
      t_ /= current_;
      log_scale_ += std::log(current_);
      current_ = 1.0;
    }
  }
  add(x, y, current_);
}

double relative_change(const Vector& a, const Vector& b) {
  const double num = (a - b).norm();
  const double den = a.norm();
  if (num == 0.0) return 0.0;
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

ConvergenceMonitor::ConvergenceMonitor(const StoppingRule& rule, std::size_t trace_every)
    : rule_(rule), trace_every_(trace_every == 0 ? 1 : trace_every), start_(std::chrono::steady_clock::now()),
      check_hit_(rule.checks.size(), false) {}

double ConvergenceMonitor::elapsed_ms() const {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

bool ConvergenceMonitor::any_criterion() const {
  return rule_.dual_rel_tol > 0.0 || rule_.ergodic_rel_tol > 0.0 || !rule_.checks.empty();
}

bool ConvergenceMonitor::observe(std::size_t k, double dual_change, double ergodic_change, const StopContext& ctx) {
  if (k % trace_every_ == 0) trace_.emplace_back(k, dual_change);
  // Each criterion records where its current run of satisfied iterations
  // began; a violation resets it. The run stops once all hold together.
  auto track = [&](bool ok, std::optional<std::size_t>& since, double& since_ms) {
    if (!ok) {
      since.reset();
      since_ms = std::numeric_limits<double>::quiet_NaN();
    } else if (!since) {
      since = k;
      since_ms = elapsed_ms();
    }
    return ok;
  };
  bool done = any_criterion();
  if (rule_.dual_rel_tol > 0.0) done = track(dual_change <= rule_.dual_rel_tol, regular_k_, regular_ms_) && done;
  if (rule_.ergodic_rel_tol > 0.0 && !std::isnan(ergodic_change))
    done = track(ergodic_change <= rule_.ergodic_rel_tol, ergodic_k_, ergodic_ms_) && done;
  for (std::size_t i = 0; i < rule_.checks.size(); ++i) {
    check_hit_[i] = rule_.checks[i](ctx);
    done = done && check_hit_[i];
  }
  converged_ = done;
  return done;
}

void ConvergenceMonitor::fill(SolveReport& r) const {
  r.converged = converged_;
  r.regular_iters = regular_k_;
  r.ergodic_iters = ergodic_k_;
  r.regular_ms = regular_ms_;
  r.ergodic_ms = ergodic_ms_;
  r.residual_trace = trace_;
  r.wall_ms = elapsed_ms();
}

SolveReport run(const SaddleProblem& p, StepSchedule sched, IterateState state, const StoppingRule& stop,
                const DiagFlags& diag) {
  ConvergenceMonitor monitor(stop, diag.trace_every);
  ErgodicAccumulator erg;
  const bool geometric =
      sched.regime() == Regime::LinearRateXFirst || sched.regime() == Regime::LinearRateYFirst;
  SolveReport rep;
  rep.problem_id = p.id();
  rep.regime = regime_name(sched.regime());
  Vector y_avg_prev;
  for (std::size_t it = 0; it < stop.max_iters; ++it) {
    if (diag.delta) rep.delta_trace.push_back(delta_diag(p, state, sched, diag.x_ref, diag.y_ref));
    const double theta = sched.theta();
    const double weight = sched.ergodic_weight();
    IterateState next = step(p, state, sched);
    if (!point_finite(next.x) || !point_finite(next.y))
      throw NumericalError("non-finite iterate at iteration " + std::to_string(next.k), next.k);
    if (geometric)
      erg.add_geometric(next.x.value, next.y.value, theta);
    else
      erg.add(next.x.value, next.y.value, weight);
    Vector y_avg = erg.y_avg();
    const double dual_change = relative_change(next.y.value, state.y.value);
    const double erg_change =
        y_avg_prev.size() ? relative_change(y_avg, y_avg_prev) : std::numeric_limits<double>::infinity();
    y_avg_prev = std::move(y_avg);
    state = std::move(next);
    if (monitor.observe(state.k, dual_change, erg_change, StopContext{state.k, state.x.value, state.y.value})) break;
  }
  if (diag.delta) rep.delta_trace.push_back(delta_diag(p, state, sched, diag.x_ref, diag.y_ref));
  monitor.fill(rep);
  rep.iterations = state.k;
  rep.x = state.x.value;
  rep.y = state.y.value;
  if (erg.empty()) {
    rep.x_avg = rep.x;
    rep.y_avg = rep.y;
  } else {
    rep.x_avg = erg.x_avg();
    rep.y_avg = erg.y_avg();
    rep.total_weight = erg.total_weight();
  }
  rep.state = std::move(state);
  return rep;
}

std::string report_to_json(const SolveReport& r, int indent) {
  nlohmann::json j;
  j["problem_id"] = r.problem_id;
  j["regime"] = r.regime;
  j["k"] = r.iterations;
  j["converged"] = r.converged;
  j["wall_ms"] = r.wall_ms;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [k, v] : r.residual_trace) trace.push_back({k, std::isfinite(v) ? nlohmann::json(v) : nlohmann::json()});
  j["residual_trace"] = trace;
  j["terminal_primal_norm"] = r.terminal_primal_norm();
  j["terminal_dual_norm"] = r.terminal_dual_norm();
  j["regular_iters"] = r.regular_iters ? nlohmann::json(*r.regular_iters) : nlohmann::json();
  j["ergodic_iters"] = r.ergodic_iters ? nlohmann::json(*r.ergodic_iters) : nlohmann::json();
  if (!r.delta_trace.empty()) j["delta_trace"] = r.delta_trace;
  j["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
  j["y"] = std::vector<double>(r.y.data(), r.y.data() + r.y.size());
  return j.dump(indent);
}

}  // namespace nlpdhg
