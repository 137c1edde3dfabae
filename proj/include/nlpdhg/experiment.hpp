#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlpdhg/engine.hpp"
#include "nlpdhg/fixture_io.hpp"

namespace nlpdhg::bench {

struct ExperimentSpec {
  ProblemKind kind = ProblemKind::Logreg;
  Eigen::Index m = 500;
  Eigen::Index n = 2000;  // d for logistic regression
  double lambda = 0.0;    // <= 0: per-kind default
  std::uint64_t seed = 0;
  std::vector<std::string> solvers;
  double tol = 1e-4;
  std::size_t max_iters = 100000;
  std::size_t repetitions = 1;  // repetition r uses seed + r
  Eigen::Index sparsity = 10;   // Lasso only
  double noise = 0.1;           // Lasso only

  static ExperimentSpec from_json_file(const std::string& path);
  static ExperimentSpec from_json_string(const std::string& text);
};

struct ResultRow {
  std::string solver;
  std::string variant;  // regular | ergodic | failed
  Eigen::Index m = 0, n = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::size_t iters = 0;
  double wall_ms = 0.0;
  double residual = 0.0;
  bool converged = false;

  bool operator==(const ResultRow& o) const;
};

// Outcome of one solver on one instance.
struct MethodResult {
  SolveReport report;
  double residual = 0.0;           // at the terminal iterate
  double ergodic_residual = 0.0;   // at the ergodic averages
  bool has_ergodic = false;
};

// logreg: nonlinear-pdhg, linear-pdhg, fb-splitting
// game:   nonlinear-pdhg, linear-pdhg, pu, omwu
// lasso:  nonlinear-pdhg, fista
std::vector<std::string> available_methods(ProblemKind k);
MethodResult run_method(const ProblemData& data, const std::string& method, double tol, std::size_t max_iters);

ProblemData generate(const ExperimentSpec& spec, std::uint64_t seed);

// Rows sorted by (seed, solver, variant). Jobs run on `threads` workers.
// deterministic = true writes wall_ms as 0.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, unsigned threads = 1, bool deterministic = false);

// Reads NLPDHG_THREADS (default 1).
unsigned threads_from_env();

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_csv(const std::string& text);

}  // namespace nlpdhg::bench
