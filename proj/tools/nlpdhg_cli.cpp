// Command-line front end: gen-data, solve, bench.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "nlpdhg/datagen.hpp"
#include "nlpdhg/experiment.hpp"
#include "nlpdhg/fixture_io.hpp"

using namespace nlpdhg;
using namespace nlpdhg::bench;

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear PDHG solvers and benchmark harness"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate a seeded problem fixture");
  std::string kind = "logreg", out_dir;
  long m = 50, n = 200;
  std::uint64_t seed = 0;
  double lambda = 0.0, noise = 0.1;
  long sparsity = 10;
  gen->add_option("--kind", kind, "logreg | game | lasso")->check(CLI::IsMember({"logreg", "game", "lasso"}));
  gen->add_option("--m", m, "rows / samples")->check(CLI::PositiveNumber);
  gen->add_option("--d,--n", n, "columns (features for logreg)")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--lambda", lambda, "regularisation (default per kind)");
  gen->add_option("--sparsity", sparsity, "nonzeros of the Lasso ground truth");
  gen->add_option("--noise", noise, "Lasso noise level");
  gen->add_option("--out", out_dir, "output directory")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve a fixture and write a JSON report");
  std::string problem_path, method = "nonlinear-pdhg", report_path;
  double tol = 1e-4;
  std::size_t max_iters = 100000;
  solve->add_option("--problem", problem_path, "problem.json sidecar")->required()->check(CLI::ExistingFile);
  solve->add_option("--method", method, "solver name");
  solve->add_option("--tol", tol, "relative dual-change tolerance");
  solve->add_option("--max-iters", max_iters, "iteration cap");
  solve->add_option("--report", report_path, "output JSON (stdout if omitted)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment spec and write CSV rows");
  std::string spec_path, csv_path;
  bool deterministic = false;
  bench_cmd->add_option("--spec", spec_path, "experiment JSON")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", csv_path, "output CSV")->required();
  bench_cmd->add_flag("--deterministic", deterministic, "write wall_ms as 0 so output is byte-reproducible");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ExperimentSpec spec;
      spec.kind = parse_kind(kind);
      spec.m = m;
      spec.n = n;
      spec.lambda = lambda;
      spec.sparsity = sparsity;
      spec.noise = noise;
      ProblemData d = generate(spec, seed);
      std::cout << write_fixture(out_dir, d) << '\n';
    } else if (*solve) {
      ProblemData d = load_fixture(problem_path);
      MethodResult r = run_method(d, method, tol, max_iters);
      r.report.regime = method + "/" + r.report.regime;
      const std::string json = report_to_json(r.report);
      if (report_path.empty()) {
        std::cout << json << '\n';
      } else {
        std::ofstream(report_path) << json << '\n';
      }
      std::cerr << "k=" << r.report.iterations << " converged=" << (r.report.converged ? "true" : "false")
                << " residual=" << r.residual << '\n';
    } else if (*bench_cmd) {
      ExperimentSpec spec = ExperimentSpec::from_json_file(spec_path);
      auto rows = run_experiment(spec, threads_from_env(), deterministic);
      std::ofstream(csv_path, std::ios::binary) << rows_to_csv(rows);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
