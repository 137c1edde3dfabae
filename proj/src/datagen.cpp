#include "nlpdhg/datagen.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "nlpdhg/rng.hpp"

namespace nlpdhg::bench {

namespace {

// Row-major fill so the stream order does not depend on the storage order.
Matrix gaussian_matrix(Eigen::Index m, Eigen::Index n, Rng& rng) {
  Matrix a(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  return a;
}

}  // namespace

LogregData gen_logreg_data(Eigen::Index m, Eigen::Index d, std::uint64_t seed, bool noise) {
  if (m < 1 || d < 1) throw ConfigError("gen_logreg_data: sizes must be positive");
  LogregData out;
  Rng feat(seed, Stream::Features), eps(seed, Stream::Noise);
  out.features = gaussian_matrix(m, d, feat);
  const Eigen::Index k = (d + 99) / 100;
  out.true_v = Vector::Zero(d);
  out.true_v.head(k).setConstant(10.0);
  Vector score = out.features * out.true_v;
  out.labels.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double xi = noise ? eps.normal() : 0.0;
    out.labels[i] = score[i] + xi >= 0.0 ? 1.0 : -1.0;
  }
  out.B = -(out.labels.asDiagonal() * out.features);
  return out;
}

Matrix gen_game_data(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ConfigError("gen_game_data: sizes must be positive");
  Rng rng(seed, Stream::Payoff);
  Matrix a(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  return a;
}

LassoData gen_lasso_data(Eigen::Index m, Eigen::Index n, Eigen::Index sparsity, double noise, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ConfigError("gen_lasso_data: sizes must be positive");
  if (sparsity < 0 || sparsity > n) throw ConfigError("gen_lasso_data: sparsity out of range");
  LassoData out;
  Rng feat(seed, Stream::Features), eps(seed, Stream::Noise), sup(seed, Stream::Support), sgn(seed, Stream::Signs);
  out.A = gaussian_matrix(m, n, feat);
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (Eigen::Index j = 0; j < sparsity; ++j) {
    const Eigen::Index r = j + static_cast<Eigen::Index>(sup.below(static_cast<std::uint64_t>(n - j)));
    std::swap(idx[j], idx[r]);
  }
  out.x_true = Vector::Zero(n);
  for (Eigen::Index j = 0; j < sparsity; ++j) out.x_true[idx[j]] = sgn.uniform() < 0.5 ? -1.0 : 1.0;
  out.b = out.A * out.x_true;
  for (Eigen::Index i = 0; i < m; ++i) out.b[i] += noise * eps.normal();
  return out;
}

}  // namespace nlpdhg::bench
