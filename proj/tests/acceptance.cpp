// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "nlpdhg/baselines.hpp"
#include "nlpdhg/bregman.hpp"
#include "nlpdhg/datagen.hpp"
#include "nlpdhg/engine.hpp"
#include "nlpdhg/l1logreg.hpp"
#include "nlpdhg/lasso.hpp"
#include "nlpdhg/linear_operator.hpp"
#include "nlpdhg/matrix_game.hpp"
#include "nlpdhg/quadratic_problem.hpp"
#include "nlpdhg/schedule.hpp"
#include "prox_oracle.hpp"
#include "test_util.hpp"

using namespace nlpdhg;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double sec = seconds_since(t0);
  const bool in_time = sec < limit_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s (%.2f s, limit %.0f s%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), sec, limit_s,
              in_time ? "" : ", over budget", out.detail.c_str());
  std::fflush(stdout);
}

double log_uniform(Rng& r, double lo, double hi) { return std::exp(r.uniform(std::log(lo), std::log(hi))); }

// ---- 1 ----
Outcome schedule_identities() {
  auto r = testutil::rng(101);
  double drift = 0.0;
  for (int c = 0; c < 10; ++c) {
    const double L = log_uniform(r, 0.1, 10.0), g = log_uniform(r, 0.1, 10.0);
    for (int which = 0; which < 2; ++which) {
      auto s = which == 0 ? StepSchedule::acc_primal(g, L, log_uniform(r, 1e-2, 1e2))
                          : StepSchedule::acc_dual(g, L, log_uniform(r, 1e-2, 1e2));
      for (int k = 0; k < 10000; ++k) {
        s.advance();
        drift = std::max(drift, std::abs(s.tau() * s.sigma() * L * L - 1.0));
      }
    }
  }
  double lin = 0.0;
  for (int c = 0; c < 2000; ++c) {
    const double L = log_uniform(r, 1e-3, 1e3), g = log_uniform(r, 1e-3, 1e3), h = log_uniform(r, 1e-3, 1e3);
    auto p = linear_rate_params(g, h, L);
    lin = std::max(lin, std::abs(p.tau * p.sigma * p.theta * L * L - 1.0));
  }
  Outcome o;
  o.ok = drift < 1e-10 && lin < 1e-12;
  o.detail = "max |tau sigma L^2 - 1| = " + fmt("%.2e", drift) + ", max |tau sigma theta L^2 - 1| = " + fmt("%.2e", lin);
  return o;
}

// ---- 2 ----
Outcome total_weight_closed_form() {
  auto r = testutil::rng(102);
  const std::vector<std::size_t> marks{1, 10, 100, 1000, 10000};
  double worst = 0.0;
  bool sandwich = true;
  const Vector z = Vector::Zero(1);
  for (int c = 0; c < 20; ++c) {
    const double g = log_uniform(r, 0.1, 10.0), L = log_uniform(r, 0.1, 10.0), s0 = log_uniform(r, 1e-2, 1e2);
    auto s = StepSchedule::acc_primal(g, L, s0);
    ErgodicAccumulator acc;
    std::size_t next = 0;
    for (std::size_t K = 1; K <= marks.back(); ++K) {
      acc.add(z, z, s.ergodic_weight());
      s.advance();
      if (K != marks[next]) continue;
      ++next;
      const double T = acc.total_weight();
      const double closed = L * L * (s.sigma() * s.sigma() - s0 * s0) / (g * s0);
      worst = std::max(worst, std::abs(T - closed) / closed);
      const double a = g / (2.0 * L * L), k = static_cast<double>(K);
      const double lo = s0 / (a + s0) * k + a * s0 / (2.0 * (a + s0) * (a + s0)) * k * k;
      const double hi = k + a / (2.0 * s0) * k * k;
      if (T < lo * (1.0 - 1e-12) || T > hi * (1.0 + 1e-12)) sandwich = false;
    }
  }
  Outcome o;
  o.ok = worst < 1e-9 && sandwich;
  o.detail = "max relative error " + fmt("%.2e", worst) + (sandwich ? ", sandwich holds" : ", sandwich violated");
  return o;
}

// ---- 3 ----
Outcome linear_rate_contraction() {
  auto r = testutil::rng(103);
  std::vector<QuadraticSaddleProblem> probs;
  probs.emplace_back(Matrix::Constant(1, 1, 1.0), 1.0, 1.0);
  for (int t = 0; t < 3; ++t) {
    const Eigen::Index m = 2 + static_cast<Eigen::Index>(r.below(5)), n = 2 + static_cast<Eigen::Index>(r.below(5));
    probs.emplace_back(testutil::gaussian(r, m, n), r.uniform(0.2, 3.0), r.uniform(0.2, 3.0), testutil::gaussian(r, n),
                       testutil::gaussian(r, m));
  }
  bool ok = true;
  double worst_ratio = 0.0;
  std::size_t checked = 0;
  for (const auto& p : probs) {
    auto [xs, ys] = p.saddle_point();
    const Point xr{xs, Vector()}, yr{ys, Vector()};
    auto sched = StepSchedule::linear_rate(p.gamma_g(), p.gamma_h_star(), p.op_norm(), false);
    const double th = sched.theta();
    IterateState s = IterateState::start(Point{xs + testutil::gaussian(r, xs.size()), Vector()},
                                         Point{ys + testutil::gaussian(r, ys.size()), Vector()});
    const double d0 = delta_diag(p, s, sched, xr, yr);
    // iterates stall at the rounding level of the saddle point, far above theta^200
    const double floor = 1e-24 * std::max(1.0, d0);
    double thk = 1.0;
    for (int k = 1; k <= 200; ++k) {
      s = step(p, s, sched);
      thk *= th;
      const double dk = delta_diag(p, s, sched, xr, yr);
      const double lower = p.geom_y().divergence(ys, s.y.value) / sched.sigma();
      if (!(dk <= thk * d0 + floor) || !(lower <= dk + floor)) ok = false;
      if (thk * d0 > floor) worst_ratio = std::max(worst_ratio, dk / (thk * d0));
      ++checked;
    }
  }
  Outcome o;
  o.ok = ok;
  o.detail = std::to_string(checked) + " steps on 4 problems, max Delta_K/(theta^K Delta_0) = " + fmt("%.4f", worst_ratio);
  return o;
}

// ---- 4 ----
struct AxiomStats {
  double min_d = 1e300, max_self = 0.0, max_three = 0.0, min_strong = 1e300;
  bool ok = true;
};

void check_pair(const BregmanGeometry& g, const Vector& x, const Vector& xh, const Vector& xp, bool l1, AxiomStats& st) {
  const double d = g.divergence(x, xp);
  st.min_d = std::min(st.min_d, d);
  if (!(d > 0.0)) st.ok = false;
  const double self = std::abs(g.divergence(x, x));
  st.max_self = std::max(st.max_self, self);
  if (!(self <= 1e-12)) st.ok = false;
  const double mag = std::abs(d) + std::abs(g.divergence(xh, xp)) + std::abs(g.divergence(x, xh)) +
                     std::abs((g.gradient(xp) - g.gradient(xh)).dot(xh - x));
  const double three = g.three_point_check(x, xh, xp) / mag;
  st.max_three = std::max(st.max_three, three);
  if (!(three < 1e-10)) st.ok = false;
  const double nrm = l1 ? (x - xp).lpNorm<1>() : (x - xp).norm();
  const double ratio = d / (0.5 * nrm * nrm);
  st.min_strong = std::min(st.min_strong, ratio);
  if (!(ratio >= 1.0 - 1e-12)) st.ok = false;
}

Outcome divergence_axioms() {
  auto r = testutil::rng(104);
  const int pairs = 10000;
  AxiomStats q, e, b;
  for (int t = 0; t < pairs; ++t) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(r.below(20));
    const auto g = BregmanGeometry::quadratic(1.0);
    check_pair(g, testutil::gaussian(r, n), testutil::gaussian(r, n), testutil::gaussian(r, n), false, q);
  }
  for (int t = 0; t < pairs; ++t) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(r.below(49));
    const auto g = BregmanGeometry::negative_entropy(n);
    const double spread = r.uniform(0.1, 3.0);
    check_pair(g, testutil::simplex(r, n, spread), testutil::simplex(r, n, spread), testutil::simplex(r, n, spread), true, e);
  }
  for (int t = 0; t < pairs; ++t) {
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(r.below(50));
    // modulus one in l2: scale 1/(4m)
    const auto g = BregmanGeometry::binary_entropy_average(m, 1.0 / (4.0 * static_cast<double>(m)));
    check_pair(g, testutil::box(r, m), testutil::box(r, m), testutil::box(r, m), false, b);
  }
  auto line = [](const char* name, const AxiomStats& s) {
    return std::string(name) + " min D " + fmt("%.1e", s.min_d) + ", |D(x,x)| " + fmt("%.1e", s.max_self) + ", 3pt " +
           fmt("%.1e", s.max_three) + ", min D/(|.|^2/2) " + fmt("%.3f", s.min_strong);
  };
  Outcome o;
  o.ok = q.ok && e.ok && b.ok;
  o.detail = line("quadratic/l2:", q) + "; " + line("entropy/l1:", e) + "; " + line("binary/l2:", b);
  return o;
}

// ---- 5 ----
Outcome logreg_optimality() {
  const double lambda = 100.0;
  auto data = bench::gen_logreg_data(50, 200, 1);
  const auto stop = StoppingRule::relative_dual_change(1e-4, 100000);
  L1LogRegProblem p(data.B, lambda);
  auto nl = run(p, p.default_schedule(), stop);
  const double res = l1logreg_dual_residual(p, nl.x, nl.y);
  const Vector v = recover_v(nl.x, lambda);
  const double f_nl = l1logreg_objective(data.B, v);
  auto lin = baseline::linear_pdhg_logreg(data.B, lambda, stop);
  const double f_lin = l1logreg_objective(data.B, lin.x);
  const double rel = std::abs(f_lin - f_nl) / std::abs(f_nl);
  Outcome o;
  const bool ball = v.lpNorm<1>() <= lambda * (1.0 + 1e-12);
  o.ok = res < 1e-4 && ball && rel <= 1e-4;
  o.detail = "dual residual " + fmt("%.2e", res) + ", ||v||_1 = " + fmt("%.6g", v.lpNorm<1>()) + ", objective nonlinear " +
             fmt("%.3e", f_nl) + " (k=" + std::to_string(nl.iterations) + ") vs linear " + fmt("%.3e", f_lin) +
             " (k=" + std::to_string(lin.iterations) + "), relative gap " + fmt("%.2e", rel);
  return o;
}

// ---- 6 ----
double l1_pair(const SolveReport& a, const SolveReport& b) {
  return (a.x - b.x).lpNorm<1>() + (a.y - b.y).lpNorm<1>();
}

Outcome game_optimality() {
  MatrixGameProblem g(bench::gen_game_data(100, 100, 1), 0.1, 1);
  const auto stop = StoppingRule::relative_dual_change(1e-11, 1000000);
  auto nl = run(g, g.default_schedule(), stop);
  auto pu = baseline::pu_solve(g, stop);
  auto om = baseline::omwu_solve(g, stop);
  auto [rx, ry] = game_optimality_residual(g, nl.x, nl.y);
  const double d1 = l1_pair(nl, pu), d2 = l1_pair(nl, om), d3 = l1_pair(pu, om);
  Outcome o;
  o.ok = rx < 1e-5 && ry < 1e-5 && std::max({d1, d2, d3}) < 1e-4;
  o.detail = "residuals " + fmt("%.1e", rx) + ", " + fmt("%.1e", ry) + "; l1 distances nl-pu " + fmt("%.1e", d1) +
             ", nl-omwu " + fmt("%.1e", d2) + ", pu-omwu " + fmt("%.1e", d3);
  return o;
}

// ---- 7 ----
// Proximal gradient with step m/||A||_2^2, stopped on the iterate change.
Vector fb_oracle(const Matrix& A, const Vector& b, double lambda) {
  const double m = static_cast<double>(A.rows());
  const double L = std::pow(Eigen::JacobiSVD<Matrix>(A).singularValues()[0], 2) / m;
  Vector x = Vector::Zero(A.cols());
  for (int k = 0; k < 5000000; ++k) {
    Vector v = x - A.transpose() * (A * x - b) / (m * L);
    Vector nx = (v.array().sign() * (v.cwiseAbs().array() - lambda / L).max(0.0)).matrix();
    const double ch = (nx - x).norm();
    x = std::move(nx);
    if (ch <= 1e-10 * std::max(1.0, x.norm())) break;
  }
  return x;
}

Outcome lasso_equivalence() {
  double worst_obj = 0.0, worst_res = 0.0;
  int pattern_bad = 0;
  std::size_t max_k = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto d = bench::gen_lasso_data(30, 60, 5, 0.1, seed);
    const double lambda = 0.1 * lasso_lambda_max(d.A, d.b);
    LassoProblem p(d.A, d.b, lambda);
    auto rep = run(p, p.default_schedule(), StoppingRule::relative_dual_change(1e-12, 2000000));
    max_k = std::max(max_k, rep.iterations);
    const Vector xo = fb_oracle(d.A, d.b, lambda);
    worst_obj = std::max(worst_obj, std::abs(lasso_objective(p, rep.x) - lasso_objective(p, xo)));
    worst_res = std::max(worst_res, lasso_optimality_residual(p, rep.x, rep.y));
    const Vector score = (d.A.transpose() * rep.y).cwiseAbs();
    for (Eigen::Index j = 0; j < score.size(); ++j) {
      const bool zero = rep.x[j] == 0.0;
      const bool dual_zero = score[j] < lambda * (1.0 - 1e-6);
      if (zero != dual_zero) ++pattern_bad;
    }
  }
  Outcome o;
  o.ok = worst_obj <= 1e-6 && worst_res < 1e-5 && pattern_bad == 0;
  o.detail = "max objective gap " + fmt("%.1e", worst_obj) + ", max residual " + fmt("%.1e", worst_res) +
             ", zero-pattern mismatches " + std::to_string(pattern_bad) + ", max iterations " + std::to_string(max_k);
  return o;
}

// ---- 8 ----
// argmax_y -(m/2)||y||^2 + <y, c> - (m/(2 sigma))||y - yb||^2, per coordinate.
Vector lasso_dual_oracle(const Vector& c, const Vector& yb, double sigma, double m) {
  Vector y(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double span = std::abs(c[i]) / m + std::abs(yb[i]) + 1.0;
    y[i] = oracle::bisect([&](double t) { return m * t - c[i] + m / sigma * (t - yb[i]); }, -span, span);
  }
  return y;
}

Outcome prox_oracles() {
  auto r = testutil::rng(108);
  double worst[6] = {0, 0, 0, 0, 0, 0};
  auto upd = [&](int i, const Vector& a, const Vector& b) {
    worst[i] = std::max(worst[i], (a - b).lpNorm<Eigen::Infinity>());
  };
  for (int t = 0; t < 50; ++t) {
    {
      const Eigen::Index m = 1 + static_cast<Eigen::Index>(r.below(6)), d = 1 + static_cast<Eigen::Index>(r.below(3));
      L1LogRegProblem p(testutil::gaussian(r, m, d), r.uniform(0.5, 5.0));
      const Vector xb = testutil::simplex(r, 2 * d), yb = testutil::box(r, m);
      const Vector yt = testutil::gaussian(r, m) / static_cast<double>(m), xt = testutil::simplex(r, 2 * d);
      const double tau = log_uniform(r, 1e-2, 10.0), sigma = log_uniform(r, 1e-3, 1.0);
      upd(0, p.primal_prox(yt, p.geom_x().make_point(xb), tau).value,
          oracle::mw_prox(p.op().adjoint_apply(yt), xb, tau));
      upd(1, p.dual_prox(xt, p.geom_y().make_point(yb), sigma).value,
          oracle::logistic_dual_prox(p.op().apply(xt), yb, sigma));
    }
    {
      const Eigen::Index m = 1 + static_cast<Eigen::Index>(r.below(6)), n = 1 + static_cast<Eigen::Index>(r.below(6));
      const double lam = log_uniform(r, 1e-2, 2.0);
      MatrixGameProblem g(testutil::gaussian(r, m, n), lam);
      const Vector xb = testutil::simplex(r, n), yb = testutil::simplex(r, m);
      const Vector yt = testutil::simplex(r, m), xt = testutil::simplex(r, n);
      const double tau = log_uniform(r, 1e-2, 10.0), sigma = log_uniform(r, 1e-2, 10.0);
      upd(2, g.primal_prox(yt, g.geom_x().make_point(xb), tau).value,
          oracle::entropic_prox(lam, g.A().transpose() * yt, xb, tau));
      upd(3, g.dual_prox(xt, g.geom_y().make_point(yb), sigma).value,
          oracle::entropic_prox(lam, -(g.A() * xt), yb, sigma));
    }
    {
      const Eigen::Index m = 1 + static_cast<Eigen::Index>(r.below(6)), n = 1 + static_cast<Eigen::Index>(r.below(6));
      const double lam = r.uniform(0.05, 1.0);
      LassoProblem p(testutil::gaussian(r, m, n), testutil::gaussian(r, m), lam);
      const Vector xb = testutil::gaussian(r, n), yb = testutil::gaussian(r, m);
      const Vector yt = testutil::gaussian(r, m), xt = testutil::gaussian(r, n);
      const double tau = log_uniform(r, 1e-2, 10.0), sigma = log_uniform(r, 1e-2, 10.0);
      upd(4, p.primal_prox(yt, Point{xb, Vector()}, tau).value, oracle::l1_prox(lam, p.A().transpose() * yt, xb, tau));
      upd(5, p.dual_prox(xt, Point{yb, Vector()}, sigma).value,
          lasso_dual_oracle(p.A() * xt - p.b(), yb, sigma, static_cast<double>(m)));
    }
  }
  const char* names[6] = {"mw", "sigmoid/logit", "game primal", "game dual", "shrink1", "lasso dual"};
  Outcome o;
  for (int i = 0; i < 6; ++i) {
    if (!(worst[i] < 1e-8)) o.ok = false;
    o.detail += std::string(i ? ", " : "") + names[i] + " " + fmt("%.1e", worst[i]);
  }
  return o;
}

// ---- 9 ----
template <class F>
double min_time_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, seconds_since(t0) * 1e3);
  }
  return best;
}

Outcome speedup_direction() {
  Outcome o;
  std::ostringstream det;
  const auto stop = StoppingRule::relative_dual_change(1e-4, 100000);
  volatile double sink = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto data = bench::gen_logreg_data(500, 2000, seed);
    auto t0 = Clock::now();
    L1LogRegProblem p(data.B, 100.0);
    auto nl = run(p, p.default_schedule(), stop);
    const double t_nl = seconds_since(t0);
    t0 = Clock::now();
    auto lin = baseline::linear_pdhg_logreg(data.B, 100.0, stop);
    const double t_lin = seconds_since(t0);
    const auto concat = LinearOperator::scaled_concat(data.B, 100.0);
    const auto dense = LinearOperator::dense(data.B);
    const double n_cheap = min_time_ms(5, [&] { sink = sink + norm_1_2(concat); });
    const double n_power = min_time_ms(3, [&] { sink = sink + norm_2_2(dense).value; });
    const bool ok = nl.converged && t_nl < t_lin && n_power >= 10.0 * n_cheap;
    if (!ok) o.ok = false;
    det << (seed > 1 ? "; " : "") << "logreg s" << seed << " " << fmt("%.1f", t_nl) << "s vs " << fmt("%.1f", t_lin)
        << "s, norms " << fmt("%.2f", n_cheap) << "ms vs " << fmt("%.1f", n_power) << "ms";
  }
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    Matrix A = bench::gen_game_data(500, 500, seed);
    auto t0 = Clock::now();
    MatrixGameProblem g(A, 0.1, seed);
    auto nl = run(g, g.default_schedule(), stop);
    const double t_nl = seconds_since(t0);
    t0 = Clock::now();
    auto lin = baseline::linear_pdhg_game(g, stop);
    const double t_lin = seconds_since(t0);
    const auto op = LinearOperator::dense(A);
    const double n_cheap = min_time_ms(5, [&] { sink = sink + norm_1_inf(op); });
    const double n_power = min_time_ms(3, [&] { sink = sink + norm_2_2(op).value; });
    const bool ok = nl.converged && t_nl < t_lin && n_power >= 10.0 * n_cheap;
    if (!ok) o.ok = false;
    det << "; game s" << seed << " " << fmt("%.2f", t_nl) << "s vs " << fmt("%.2f", t_lin) << "s, norms "
        << fmt("%.3f", n_cheap) << "ms vs " << fmt("%.1f", n_power) << "ms";
  }
  o.detail = det.str();
  return o;
}

// ---- 10 ----
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Outcome bench_determinism() {
  const fs::path dir = fs::temp_directory_path() / "nlpdhg_acceptance";
  fs::create_directories(dir);
  std::ofstream(dir / "spec.json") << R"({"problem": "game", "m": 40, "n": 30, "seed": 7, "repetitions": 2,
      "solvers": ["nonlinear-pdhg", "linear-pdhg", "pu", "omwu"], "tol": 1e-6, "max_iters": 20000})";
  auto bench = [&](const char* out) {
    const std::string cmd = std::string("NLPDHG_THREADS=1 ") + NLPDHG_CLI_PATH + " bench --spec " +
                            (dir / "spec.json").string() + " --out " + (dir / out).string() + " --deterministic";
    return std::system(cmd.c_str());
  };
  Outcome o;
  if (bench("a.csv") != 0 || bench("b.csv") != 0) {
    o.ok = false;
    o.detail = "bench exited with an error";
    return o;
  }
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  o.ok = !a.empty() && a == b;
  o.detail = std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different");
  return o;
}

}  // namespace

int main() {
  criterion(1, "schedule identities", 1, schedule_identities);
  criterion(2, "T_K closed form and sandwich", 5, total_weight_closed_form);
  criterion(3, "linear-rate contraction", 5, linear_rate_contraction);
  criterion(4, "divergence axioms and strong convexity", 10, divergence_axioms);
  criterion(5, "logistic regression optimality", 60, logreg_optimality);
  criterion(6, "matrix game optimality", 60, game_optimality);
  criterion(7, "lasso oracle equivalence", 30, lasso_equivalence);
  criterion(8, "prox oracle equivalence", 30, prox_oracles);
  criterion(9, "speedup direction", 300, speedup_direction);
  criterion(10, "bench determinism", 60, bench_determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
