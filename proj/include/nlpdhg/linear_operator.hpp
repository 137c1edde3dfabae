#pragma once

#include <memory>
#include <string>

#include "nlpdhg/types.hpp"

namespace nlpdhg {

// Dense matrix, or the implicit concatenation scale * (B | -B).
class LinearOperator {
 public:
  enum class Kind { Dense, ScaledConcat };

  static LinearOperator dense(Matrix a);
  static LinearOperator scaled_concat(Matrix base, double scale);

  Kind kind() const { return kind_; }
  Eigen::Index rows() const { return mat_->rows(); }
  Eigen::Index cols() const { return kind_ == Kind::Dense ? mat_->cols() : 2 * mat_->cols(); }
  // The stored matrix: A for dense, B for scaled-concat.
  const Matrix& base() const { return *mat_; }
  double scale() const { return scale_; }

  Vector apply(const Vector& x) const;
  Vector adjoint_apply(const Vector& y) const;
  Matrix materialize() const;

 private:
  LinearOperator(Kind k, std::shared_ptr<const Matrix> m, double s) : kind_(k), mat_(std::move(m)), scale_(s) {}

  Kind kind_;
  std::shared_ptr<const Matrix> mat_;
  double scale_;
};

// Largest l2 norm of a column (l1 -> l2 operator norm).
double norm_1_2(const LinearOperator& op);
// Largest entry magnitude (l1 -> l_inf operator norm).
double norm_1_inf(const LinearOperator& op);
// Largest l2 norm of a row (l2 -> l_inf operator norm).
double norm_2_inf(const LinearOperator& op);

struct PowerIterationResult {
  double value;
  std::size_t iterations;
};
// Largest singular value by power iteration on A^T A from the normalised
// all-ones vector (sign-split for scaled concatenations). Stops when successive Rayleigh quotients differ by less
// than tol relative; throws ConvergenceError carrying the last estimate.
PowerIterationResult norm_2_2(const LinearOperator& op, double tol = 1e-10,
                              std::size_t max_iters = 100000);

Matrix load_matrix_csv(const std::string& path);
void store_matrix_csv(const std::string& path, const Matrix& a);
Vector load_vector_csv(const std::string& path);
void store_vector_csv(const std::string& path, const Vector& v);

}  // namespace nlpdhg
