#include "nlpdhg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "nlpdhg/baselines.hpp"
#include "nlpdhg/datagen.hpp"
#include "nlpdhg/l1logreg.hpp"
#include "nlpdhg/lasso.hpp"
#include "nlpdhg/matrix_game.hpp"

namespace nlpdhg::bench {

namespace {

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  s.kind = parse_kind(j.at("problem").get<std::string>());
  s.m = j.value("m", s.m);
  if (j.contains("d")) s.n = j["d"].get<Eigen::Index>();
  if (j.contains("n")) s.n = j["n"].get<Eigen::Index>();
  if (j.contains("lambda") && !j["lambda"].is_null()) s.lambda = j["lambda"].get<double>();
  s.seed = j.value("seed", s.seed);
  s.solvers = j.value("solvers", available_methods(s.kind));
  s.tol = j.value("tol", s.tol);
  s.max_iters = j.value("max_iters", s.max_iters);
  s.repetitions = j.value("repetitions", s.repetitions);
  s.sparsity = j.value("sparsity", s.sparsity);
  s.noise = j.value("noise", s.noise);
  if (s.m < 1 || s.n < 1) throw ConfigError("experiment: sizes must be positive");
  if (!(s.tol > 0.0)) throw ConfigError("experiment: tol must be positive");
  for (const auto& name : s.solvers) {
    const auto avail = available_methods(s.kind);
    if (std::find(avail.begin(), avail.end(), name) == avail.end())
      throw ConfigError("experiment: unknown solver '" + name + "' for " + kind_name(s.kind));
  }
  return s;
}

Vector sigmoid_over_m(const Matrix& B, const Vector& v) {
  const double md = static_cast<double>(B.rows());
  Vector z = B * v;
  return (1.0 / (md * (1.0 + (-z.array()).exp()))).matrix();
}

// ||v - proj(v - grad f(v))||_2 for the logistic loss on the l1 ball.
double projected_gradient_residual(const Matrix& B, double lambda, const Vector& v) {
  Vector grad = B.transpose() * sigmoid_over_m(B, v);
  return (v - baseline::project_l1_ball(v - grad, lambda)).norm();
}

double game_residual(const MatrixGameProblem& g, const Vector& x, const Vector& y) {
  if ((x.array() <= 0.0).any() || (y.array() <= 0.0).any()) return std::numeric_limits<double>::infinity();
  auto [a, b] = game_optimality_residual(g, x, y);
  return std::max(a, b);
}

}  // namespace

ExperimentSpec ExperimentSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return spec_from_json(nlohmann::json::parse(in));
}

ExperimentSpec ExperimentSpec::from_json_string(const std::string& text) {
  return spec_from_json(nlohmann::json::parse(text));
}

bool ResultRow::operator==(const ResultRow& o) const {
  return solver == o.solver && variant == o.variant && m == o.m && n == o.n && same_double(lambda, o.lambda) &&
         seed == o.seed && iters == o.iters && same_double(wall_ms, o.wall_ms) && same_double(residual, o.residual) &&
         converged == o.converged;
}

std::vector<std::string> available_methods(ProblemKind k) {
  switch (k) {
    case ProblemKind::Logreg: return {"nonlinear-pdhg", "linear-pdhg", "fb-splitting"};
    case ProblemKind::Game: return {"nonlinear-pdhg", "linear-pdhg", "pu", "omwu"};
    case ProblemKind::Lasso: return {"nonlinear-pdhg", "fista"};
  }
  return {};
}

MethodResult run_method(const ProblemData& data, const std::string& method, double tol, std::size_t max_iters) {
  const StoppingRule both = StoppingRule::relative_dual_change(tol, max_iters);
  StoppingRule regular_only;
  regular_only.max_iters = max_iters;
  regular_only.dual_rel_tol = tol;
  MethodResult out;
  switch (data.kind) {
    case ProblemKind::Logreg: {
      if (method == "nonlinear-pdhg") {
        L1LogRegProblem p(data.matrix, data.lambda);
        out.report = run(p, p.default_schedule(), both);
        out.residual = l1logreg_dual_residual(p, out.report.x, out.report.y);
        out.ergodic_residual = l1logreg_dual_residual(p, out.report.x_avg, out.report.y_avg);
        out.has_ergodic = true;
      } else if (method == "linear-pdhg") {
        out.report = baseline::linear_pdhg_logreg(data.matrix, data.lambda, both);
        out.residual = (out.report.y - sigmoid_over_m(data.matrix, out.report.x)).norm();
        out.ergodic_residual = (out.report.y_avg - sigmoid_over_m(data.matrix, out.report.x_avg)).norm();
        out.has_ergodic = true;
      } else if (method == "fb-splitting") {
        out.report = baseline::fb_splitting_logreg(data.matrix, data.lambda, regular_only);
        out.residual = projected_gradient_residual(data.matrix, data.lambda, out.report.x);
      } else {
        throw ConfigError("unknown logreg method: " + method);
      }
      break;
    }
    case ProblemKind::Game: {
      MatrixGameProblem g(data.matrix, data.lambda, data.seed);
      if (method == "nonlinear-pdhg") {
        out.report = run(g, g.default_schedule(), both);
        out.has_ergodic = true;
      } else if (method == "linear-pdhg") {
        out.report = baseline::linear_pdhg_game(g, both);
        out.has_ergodic = true;
      } else if (method == "pu") {
        out.report = baseline::pu_solve(g, regular_only);
      } else if (method == "omwu") {
        out.report = baseline::omwu_solve(g, regular_only);
      } else {
        throw ConfigError("unknown game method: " + method);
      }
      out.residual = game_residual(g, out.report.x, out.report.y);
      if (out.has_ergodic) out.ergodic_residual = game_residual(g, out.report.x_avg, out.report.y_avg);
      break;
    }
    case ProblemKind::Lasso: {
      LassoProblem p(data.matrix, data.b, data.lambda);
      if (method == "nonlinear-pdhg") {
        out.report = run(p, p.default_schedule(), both);
        out.ergodic_residual = lasso_optimality_residual(p, out.report.x_avg, out.report.y_avg);
        out.has_ergodic = true;
      } else if (method == "fista") {
        out.report = baseline::fista_lasso(p, regular_only);
      } else {
        throw ConfigError("unknown lasso method: " + method);
      }
      out.residual = lasso_optimality_residual(p, out.report.x, out.report.y);
      break;
    }
  }
  return out;
}

ProblemData generate(const ExperimentSpec& spec, std::uint64_t seed) {
  ProblemData d;
  d.kind = spec.kind;
  d.seed = seed;
  switch (spec.kind) {
    case ProblemKind::Logreg: d.matrix = gen_logreg_data(spec.m, spec.n, seed).B; break;
    case ProblemKind::Game: d.matrix = gen_game_data(spec.m, spec.n, seed); break;
    case ProblemKind::Lasso: {
      LassoData l = gen_lasso_data(spec.m, spec.n, std::min(spec.sparsity, spec.n), spec.noise, seed);
      d.matrix = std::move(l.A);
      d.b = std::move(l.b);
      break;
    }
  }
  d.lambda = spec.lambda > 0.0 ? spec.lambda : default_lambda(spec.kind, d.matrix, d.b);
  return d;
}

unsigned threads_from_env() {
  const char* v = std::getenv("NLPDHG_THREADS");
  if (!v || !*v) return 1;
  const long t = std::strtol(v, nullptr, 10);
  return t >= 1 ? static_cast<unsigned>(t) : 1u;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, unsigned threads, bool deterministic) {
  std::vector<ProblemData> instances;
  for (std::size_t r = 0; r < spec.repetitions; ++r) instances.push_back(generate(spec, spec.seed + r));

  struct Job {
    std::size_t instance;
    std::string solver;
  };
  std::vector<Job> jobs;
  for (std::size_t r = 0; r < instances.size(); ++r)
    for (const auto& s : spec.solvers) jobs.push_back({r, s});

  std::vector<ResultRow> rows;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const ProblemData& d = instances[jobs[i].instance];
      ResultRow base;
      base.solver = jobs[i].solver;
      base.m = d.matrix.rows();
      base.n = d.matrix.cols();
      base.lambda = d.lambda;
      base.seed = d.seed;
      std::vector<ResultRow> out;
      try {
        MethodResult res = run_method(d, jobs[i].solver, spec.tol, spec.max_iters);
        const SolveReport& rep = res.report;
        ResultRow reg = base;
        reg.variant = "regular";
        reg.converged = rep.regular_iters.has_value();
        reg.iters = rep.regular_iters.value_or(rep.iterations);
        reg.wall_ms = rep.regular_iters ? rep.regular_ms : rep.wall_ms;
        reg.residual = res.residual;
        out.push_back(reg);
        if (res.has_ergodic) {
          ResultRow erg = base;
          erg.variant = "ergodic";
          erg.converged = rep.ergodic_iters.has_value();
          erg.iters = rep.ergodic_iters.value_or(rep.iterations);
          erg.wall_ms = rep.ergodic_iters ? rep.ergodic_ms : rep.wall_ms;
          erg.residual = res.ergodic_residual;
          out.push_back(erg);
        }
      } catch (const std::exception&) {
        ResultRow bad = base;
        bad.variant = "failed";
        bad.residual = std::numeric_limits<double>::quiet_NaN();
        out.push_back(bad);
      }
      if (deterministic)
        for (auto& r : out) r.wall_ms = 0.0;
      std::lock_guard<std::mutex> lock(mu);
      rows.insert(rows.end(), out.begin(), out.end());
    }
  };
  const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.seed, a.solver, a.variant) < std::tie(b.seed, b.solver, b.variant);
  });
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "solver,variant,m,n,lambda,seed,iters,wall_ms,residual,converged\n";
  for (const auto& r : rows)
    os << r.solver << ',' << r.variant << ',' << r.m << ',' << r.n << ',' << fmt(r.lambda) << ',' << r.seed << ','
       << r.iters << ',' << fmt(r.wall_ms) << ',' << fmt(r.residual) << ',' << (r.converged ? "true" : "false")
       << '\n';
  return os.str();
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<ResultRow> rows;
  if (!std::getline(is, line)) return rows;
  if (line != "solver,variant,m,n,lambda,seed,iters,wall_ms,residual,converged")
    throw std::runtime_error("unexpected CSV header: " + line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) throw std::runtime_error("bad CSV row: " + line);
    ResultRow r;
    r.solver = f[0];
    r.variant = f[1];
    r.m = std::stoll(f[2]);
    r.n = std::stoll(f[3]);
    r.lambda = std::strtod(f[4].c_str(), nullptr);
    r.seed = std::stoull(f[5]);
    r.iters = std::stoull(f[6]);
    r.wall_ms = std::strtod(f[7].c_str(), nullptr);
    r.residual = std::strtod(f[8].c_str(), nullptr);
    r.converged = f[9] == "true";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace nlpdhg::bench
