#pragma once

#include <cstdint>
#include <string>

#include "nlpdhg/types.hpp"

namespace nlpdhg::bench {

enum class ProblemKind { Logreg, Game, Lasso };

std::string kind_name(ProblemKind k);
ProblemKind parse_kind(const std::string& s);

// A generated or loaded problem instance. For logistic regression `matrix`
// is B (rows -b_i u_i); for games the payoff; for the Lasso the design, with
// the response in `b`.
struct ProblemData {
  ProblemKind kind = ProblemKind::Logreg;
  Matrix matrix;
  Vector b;
  double lambda = 0.0;
  std::uint64_t seed = 0;
};

double default_lambda(ProblemKind k, const Matrix& matrix, const Vector& b);

// Writes DIR/matrix.csv (+ DIR/b.csv) and DIR/problem.json with
// {kind, lambda, m, d|n, seed, matrix, b}.
std::string write_fixture(const std::string& dir, const ProblemData& data);
// Reads a problem.json sidecar; file names are relative to its directory.
ProblemData load_fixture(const std::string& json_path);

}  // namespace nlpdhg::bench
