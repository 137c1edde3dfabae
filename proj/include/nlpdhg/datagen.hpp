#pragma once

#include <cstdint>

#include "nlpdhg/types.hpp"

namespace nlpdhg::bench {

struct LogregData {
  Matrix B;        // rows -b_i u_i
  Vector true_v;   // ceil(d/100) leading coefficients equal to 10
  Vector labels;   // +1 / -1
  Matrix features; // u_i as rows
};

// Gaussian features, labels sign(<u_i, v> + xi_i). noise = false drops xi.
LogregData gen_logreg_data(Eigen::Index m, Eigen::Index d, std::uint64_t seed, bool noise = true);

// i.i.d. uniform entries in [-1, 1].
Matrix gen_game_data(Eigen::Index m, Eigen::Index n, std::uint64_t seed);

struct LassoData {
  Matrix A;
  Vector b;
  Vector x_true;
};

// Gaussian A, x_true with `sparsity` entries equal to +-1 at random
// positions, b = A x_true + noise * N(0, 1).
LassoData gen_lasso_data(Eigen::Index m, Eigen::Index n, Eigen::Index sparsity, double noise, std::uint64_t seed);

}  // namespace nlpdhg::bench
