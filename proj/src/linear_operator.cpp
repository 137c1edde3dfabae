#include "nlpdhg/linear_operator.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace nlpdhg {

LinearOperator LinearOperator::dense(Matrix a) {
  if (a.size() == 0) throw DimensionError("empty operator");
  if (!a.allFinite()) throw DomainError("operator has non-finite entries");
  return LinearOperator(Kind::Dense, std::make_shared<const Matrix>(std::move(a)), 1.0);
}

LinearOperator LinearOperator::scaled_concat(Matrix base, double scale) {
  if (base.size() == 0) throw DimensionError("empty operator");
  if (!base.allFinite()) throw DomainError("operator has non-finite entries");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("scaled-concat: scale must be positive");
  return LinearOperator(Kind::ScaledConcat, std::make_shared<const Matrix>(std::move(base)), scale);
}

Vector LinearOperator::apply(const Vector& x) const {
  require_same_size(x.size(), cols(), "apply");
  if (kind_ == Kind::Dense) return (*mat_) * x;
  const Eigen::Index d = mat_->cols();
  Vector diff = x.head(d) - x.tail(d);
  Vector out = (*mat_) * diff;
  out *= scale_;
  return out;
}

Vector LinearOperator::adjoint_apply(const Vector& y) const {
  require_same_size(y.size(), rows(), "adjoint_apply");
  if (kind_ == Kind::Dense) return mat_->transpose() * y;
  const Eigen::Index d = mat_->cols();
  Vector g = mat_->transpose() * y;
  Vector out(2 * d);
  out.head(d) = scale_ * g;
  out.tail(d) = -scale_ * g;
  return out;
}

Matrix LinearOperator::materialize() const {
  if (kind_ == Kind::Dense) return *mat_;
  Matrix out(mat_->rows(), 2 * mat_->cols());
  out << scale_ * (*mat_), -scale_ * (*mat_);
  return out;
}

double norm_1_2(const LinearOperator& op) {
  return op.scale() * op.base().colwise().norm().maxCoeff();
}

double norm_1_inf(const LinearOperator& op) {
  return op.scale() * op.base().cwiseAbs().maxCoeff();
}

double norm_2_inf(const LinearOperator& op) {
  // the -B half doubles every squared row norm
  const double f = op.kind() == LinearOperator::Kind::Dense ? 1.0 : std::sqrt(2.0);
  return f * op.scale() * op.base().rowwise().norm().maxCoeff();
}

PowerIterationResult norm_2_2(const LinearOperator& op, double tol, std::size_t max_iters) {
  if (!(tol > 0.0)) throw ConfigError("norm_2_2: tol must be positive");
  const Eigen::Index n = op.cols();
  Vector v = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  // all-ones lies in the kernel of lambda (B | -B); start from (1, -1) there
  if (op.kind() == LinearOperator::Kind::ScaledConcat) v.tail(n / 2) *= -1.0;
  double prev = -1.0;
  double est = 0.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    Vector w = op.adjoint_apply(op.apply(v));
    const double rq = v.dot(w);  // Rayleigh quotient of A^T A, v normalised
    const double nw = w.norm();
    est = std::sqrt(std::max(rq, 0.0));
    if (nw == 0.0) return {0.0, it};
    if (prev >= 0.0 && std::abs(rq - prev) <= tol * rq) return {est, it};
    prev = rq;
    v = w / nw;
  }
  throw ConvergenceError("norm_2_2: power iteration did not converge", est);
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw DimensionError(path + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DimensionError(path + ": empty matrix");
  Matrix a(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  return a;
}

void store_matrix_csv(const std::string& path, const Matrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j);
    }
    out << '\n';
  }
}

Vector load_vector_csv(const std::string& path) {
  Matrix a = load_matrix_csv(path);
  if (a.cols() != 1) throw DimensionError(path + ": expected a single column");
  return a.col(0);
}

void store_vector_csv(const std::string& path, const Vector& v) { store_matrix_csv(path, Matrix(v)); }

}  // namespace nlpdhg
